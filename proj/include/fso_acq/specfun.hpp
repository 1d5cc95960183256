#pragma once

#include <functional>

#include "fso_acq/errors.hpp"

namespace fso_acq::specfun {

/// Tolerances for the adaptive Simpson integrator.
struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 20000;
};

/// Exponential integral Ei(x) for x > 0. Power series up to x = 40,
/// asymptotic expansion beyond; relative error < 1e-12 across the domain.
/// Overflows to +inf for x > ~716 (Ei grows like e^x/x).
double exp_integral_ei(double x);

/// exp(-x) * Ei(x) for x > 0. Stable for arbitrarily large x, where the
/// unscaled Ei would overflow; ~1/x for large x.
double exp_integral_ei_scaled(double x);

/// Modified Bessel function I0(x), x >= 0. Relative error < 1e-12.
double bessel_i0(double x);

/// exp(-x) * I0(x), x >= 0. Stable for large x (~1/sqrt(2*pi*x)).
double bessel_i0_scaled(double x);

/// Gaussian tail probability Q(x) = 1 - Phi(x).
double gaussian_q(double x);

/// Inverse of gaussian_q on (0,1). Rational initial guess polished by Newton;
/// round-trips through gaussian_q to better than 1e-10.
double gaussian_q_inv(double p);

/// Adaptive Simpson quadrature of f over [a,b]. The local acceptance test is
/// |S_fine - S_coarse| <= 15 * max(abs_tol_local, rel_tol*|S_fine|) with the
/// absolute budget split across halves. Throws QuadratureError (carrying the
/// best estimate assembled so far) once max_subdivisions is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

}  // namespace fso_acq::specfun
