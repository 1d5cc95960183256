#pragma once

#include "fso_acq/model.hpp"

namespace fso_acq {

/// 2D point on the target plane, meters.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Lidar return budget for one choice of the energy split factor alpha.
struct LinkBudget {
  double return_energy_j = 0.0;    // E_r captured by the lidar telescope
  double photon_energy_j = 0.0;    // E_p
  double mean_photon_count = 0.0;  // lambda_U = E_r / E_p
  double alpha = 0.0;
};

/// Planck-Einstein photon energy hc/lambda.
double photon_energy(double wavelength_m);

/// Energy reflected off the UAV and captured by the lidar aperture:
/// alpha*E_t*sigma*a_l^2 / (32*pi^2*theta_l^2*D^6). Linear in alpha.
double lidar_return_energy(const SystemParams& params, double alpha);

/// Return energy, photon energy and mean detected photon count for alpha.
LinkBudget link_budget(const SystemParams& params, double alpha);

/// Gaussian beam intensity (J/m^2) of the lidar at `point` for a beam
/// centered at `center` on the target plane.
double beam_intensity(const SystemParams& params, double alpha, Vec2 point,
                      Vec2 center);

}  // namespace fso_acq
