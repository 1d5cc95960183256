#include "fso_acq/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include "fso_acq/constants.hpp"
#include "fso_acq/linkbudget.hpp"
#include "fso_acq/specfun.hpp"

namespace fso_acq {

namespace {

// sum_{k>=1} x^k / (k * k!) = Ei(x) - ln(x) - gamma, computed without
// cancellation for moderate x.
double ei_minus_log_minus_gamma(double x) {
  if (x <= 40.0) {
    double term = x;
    double sum = x;
    for (int k = 2; k < 500; ++k) {
      term *= x / k;
      double contrib = term / k;
      sum += contrib;
      if (contrib < sum * 1e-17) break;
    }
    return sum;
  }
  return specfun::exp_integral_ei(x) - std::log(x) - kEulerGamma;
}

}  // namespace

double centroid_variance_bound(double lambda_u, double array_area_m2,
                               double spot_radius_m) {
  if (lambda_u < 0.0) {
    throw std::domain_error("centroid_variance_bound: lambda_u must be >= 0");
  }
  if (!(array_area_m2 > 0.0) || !(spot_radius_m > 0.0)) {
    throw std::domain_error("centroid_variance_bound: area and spot radius must be > 0");
  }
  double half_area = 0.5 * array_area_m2;
  if (lambda_u == 0.0) {
    return half_area;
  }
  double rho2 = spot_radius_m * spot_radius_m;
  if (lambda_u <= 40.0) {
    return std::exp(-lambda_u) * (half_area + rho2 * ei_minus_log_minus_gamma(lambda_u));
  }
  // e^{-lambda} underflows long before the Ei term stops mattering; keep the
  // scaled exponential integral and let the rest flush to zero naturally.
  double damp = std::exp(-lambda_u);
  return half_area * damp +
         rho2 * (specfun::exp_integral_ei_scaled(lambda_u) -
                 damp * (std::log(lambda_u) + kEulerGamma));
}

double angle_error_variance_bound(double angle_rad, double focal_length_m,
                                  double centroid_bound_m2) {
  double c = std::cos(angle_rad);
  if (!(c > 0.0)) {
    throw std::domain_error("angle_error_variance_bound: requires cos(angle) > 0");
  }
  double fc = focal_length_m * c;
  return centroid_bound_m2 / (fc * fc);
}

UncertaintySphere uncertainty_sphere(const SystemParams& p, double alpha) {
  if (!p.validated) {
    throw std::invalid_argument("uncertainty_sphere: params must be validated");
  }
  LinkBudget lb = link_budget(p, alpha);
  double bound = centroid_variance_bound(lb.mean_photon_count, p.array_area_m2,
                                         p.spot_radius_m);
  double d = p.distance_m;
  double d2 = d * d;

  UncertaintySphere s;
  s.shape = p.sphere_shape;
  s.distance_m = d;
  if (p.sphere_shape == SphereShape::Circular) {
    double var = angle_error_variance_bound(p.elevation_rad, p.focal_length_m, bound);
    double sigma = std::sqrt(var);
    s.sigma_e_az = sigma;
    s.sigma_e_el = sigma;
    s.radius_a_m = 3.0 * sigma * d;
    s.radius_b_m = s.radius_a_m;
    s.firing_var_1_m2 = 2.0 * var * d2;
    s.firing_var_2_m2 = s.firing_var_1_m2;
  } else {
    double var_az = angle_error_variance_bound(p.azimuth_rad, p.focal_length_m, bound);
    double var_el = angle_error_variance_bound(p.elevation_rad, p.focal_length_m, bound);
    s.sigma_e_az = std::sqrt(var_az);
    s.sigma_e_el = std::sqrt(var_el);
    s.radius_a_m = 3.0 * s.sigma_e_az * d;
    s.radius_b_m = 3.0 * s.sigma_e_el * d;
    s.firing_var_1_m2 = var_az * d2;
    s.firing_var_2_m2 = var_el * d2;
  }
  return s;
}

}  // namespace fso_acq
