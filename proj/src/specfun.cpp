#include "fso_acq/specfun.hpp"

#include <cmath>
#include <limits>

#include "fso_acq/constants.hpp"

namespace fso_acq::specfun {

namespace {

constexpr double kSeriesCutoff = 40.0;

// sum_{k>=1} x^k / (k * k!), the entire part of Ei(x) - gamma - ln(x).
// All terms positive, no cancellation.
double ei_entire_series(double x) {
  double term = x;  // x^k / k!
  double sum = x;
  for (int k = 2; k < 500; ++k) {
    term *= x / k;
    double contrib = term / k;
    sum += contrib;
    if (contrib < sum * 1e-17) break;
  }
  return sum;
}

// sum_{k>=0} k! / x^k / x, truncated at the smallest term. Valid for x > ~40,
// where the truncation error is far below double precision.
double ei_asymptotic_over_exp(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    double next = term * k / x;
    if (next >= term) break;  // divergent tail reached
    term = next;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum / x;
}

// I0 power series sum_{k>=0} (x^2/4)^k / (k!)^2; fine up to x ~ 40.
double i0_series(double x) {
  double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// e^{-x} I0(x) ~ (2*pi*x)^{-1/2} * sum ((2k-1)!!)^2 / (k! (8x)^k) for large x.
double i0_scaled_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 100; ++k) {
    double odd = 2.0 * k - 1.0;
    double next = term * odd * odd / (8.0 * x * k);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

struct SimpsonState {
  const std::function<double(double)>* f;
  int budget;
  bool exhausted = false;
};

// Coarse samples can miss an integrand concentrated deep inside the interval,
// so the first levels always subdivide before the error test may accept.
constexpr int kForcedDepth = 5;

double simpson_step(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(SimpsonState& st, double a, double fa, double b, double fb,
                        double m, double fm, double whole, double abs_tol,
                        double rel_tol, int depth) {
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = (*st.f)(lm);
  double frm = (*st.f)(rm);
  double left = simpson_step(a, fa, m, fm, flm);
  double right = simpson_step(m, fm, b, fb, frm);
  double refined = left + right;
  double err = refined - whole;
  double tol = std::max(abs_tol, rel_tol * std::fabs(refined));
  bool interval_floor = (b - a) < 1e-14 * (std::fabs(a) + std::fabs(b) + 1.0);
  bool converged = std::fabs(err) <= 15.0 * tol && depth >= kForcedDepth;
  if (converged || interval_floor) {
    return refined + err / 15.0;
  }
  if (st.budget <= 0) {
    st.exhausted = true;
    return refined + err / 15.0;
  }
  st.budget -= 1;
  return adaptive_simpson(st, a, fa, m, fm, lm, flm, left, 0.5 * abs_tol, rel_tol,
                          depth + 1) +
         adaptive_simpson(st, m, fm, b, fb, rm, frm, right, 0.5 * abs_tol, rel_tol,
                          depth + 1);
}

}  // namespace

double exp_integral_ei(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("exp_integral_ei: requires x > 0");
  }
  if (x <= kSeriesCutoff) {
    return kEulerGamma + std::log(x) + ei_entire_series(x);
  }
  return std::exp(x) * ei_asymptotic_over_exp(x);
}

double exp_integral_ei_scaled(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("exp_integral_ei_scaled: requires x > 0");
  }
  if (x <= kSeriesCutoff) {
    return std::exp(-x) * (kEulerGamma + std::log(x) + ei_entire_series(x));
  }
  return ei_asymptotic_over_exp(x);
}

double bessel_i0(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_i0: requires x >= 0");
  }
  if (x <= kSeriesCutoff) {
    return i0_series(x);
  }
  return std::exp(x) * i0_scaled_asymptotic(x);
}

double bessel_i0_scaled(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_i0_scaled: requires x >= 0");
  }
  if (x <= kSeriesCutoff) {
    return std::exp(-x) * i0_series(x);
  }
  return i0_scaled_asymptotic(x);
}

double gaussian_q(double x) {
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double gaussian_q_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("gaussian_q_inv: requires p in (0,1)");
  }
  // Acklam's rational approximation for the standard normal quantile,
  // evaluated at 1-p so the result is on the Q convention.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00, 2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double pl = 1.0 - p;  // P(Z <= x) target
  const double plow = 0.02425;
  double x;
  if (pl < plow) {
    double q = std::sqrt(-2.0 * std::log(pl));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (pl <= 1.0 - plow) {
    double q = pl - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - pl));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Newton polish on Q(x) = p; dQ/dx = -phi(x).
  for (int i = 0; i < 4; ++i) {
    double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
    if (phi <= 0.0) break;
    double step = (gaussian_q(x) - p) / phi;
    x += step;
    if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1) {
    throw std::invalid_argument("integrate: invalid QuadratureSpec");
  }
  if (!(a <= b)) {
    throw std::domain_error("integrate: requires a <= b");
  }
  if (a == b) return 0.0;
  double fa = f(a);
  double fb = f(b);
  double m = 0.5 * (a + b);
  double fm = f(m);
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm)) {
    throw std::domain_error("integrate: non-finite integrand sample");
  }
  double whole = simpson_step(a, fa, b, fb, fm);
  SimpsonState st{&f, spec.max_subdivisions};
  double result = adaptive_simpson(st, a, fa, b, fb, m, fm, whole, spec.abs_tol,
                                   spec.rel_tol, 0);
  if (st.exhausted) {
    throw QuadratureError("integrate: subdivision budget exhausted", result);
  }
  return result;
}

}  // namespace fso_acq::specfun
