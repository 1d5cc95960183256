#pragma once

#include "fso_acq/model.hpp"

namespace fso_acq {

/// Lidar angle-of-arrival uncertainty region and the derived FSO firing
/// distribution. Radii use the 3-sigma rule; downstream probability formulas
/// consume the variances, the radii are diagnostics.
struct UncertaintySphere {
  SphereShape shape = SphereShape::Circular;
  double sigma_e_az = 0.0;       // azimuth angle-error std bound (rad)
  double sigma_e_el = 0.0;       // elevation angle-error std bound (rad)
  double radius_a_m = 0.0;       // 3 * sigma_e_az * D
  double radius_b_m = 0.0;       // 3 * sigma_e_el * D
  double firing_var_1_m2 = 0.0;  // firing distribution variance, x axis
  double firing_var_2_m2 = 0.0;  // firing distribution variance, y axis
  double distance_m = 0.0;
};

/// Upper bound on the centroid estimator variance over a Poisson photon
/// count with mean lambda_u:
///   |A|/2 * e^{-lambda} + rho^2 * e^{-lambda} * (Ei(lambda) - ln(lambda) - gamma).
/// At lambda_u = 0 the bound is |A|/2 (beam assumed at the array center when
/// no photon arrives). Stable for arbitrarily large lambda_u, where it decays
/// like rho^2 / lambda_u.
double centroid_variance_bound(double lambda_u, double array_area_m2,
                               double spot_radius_m);

/// Propagates a focal-plane position variance to an angle-of-arrival
/// variance: bound / (F * cos(angle))^2.
double angle_error_variance_bound(double angle_rad, double focal_length_m,
                                  double centroid_bound_m2);

/// Builds the uncertainty sphere for the given energy split. Circular mode
/// uses the elevation-angle bound as the shared sigma and a firing variance
/// of 2*sigma^2*D^2; elliptical mode keeps per-axis bounds with firing
/// variances sigma_i^2*D^2.
UncertaintySphere uncertainty_sphere(const SystemParams& params, double alpha);

}  // namespace fso_acq
