#include "fso_acq/linkbudget.hpp"

#include <cmath>
#include <stdexcept>

#include "fso_acq/constants.hpp"

namespace fso_acq {

namespace {

void require_validated(const SystemParams& p, const char* where) {
  if (!p.validated) {
    throw std::invalid_argument(std::string(where) + ": params must be validated");
  }
}

void require_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error(std::string(where) + ": alpha must be in (0,1)");
  }
}

}  // namespace

double photon_energy(double wavelength_m) {
  if (!(wavelength_m > 0.0)) {
    throw std::domain_error("photon_energy: wavelength must be > 0");
  }
  return kPlanckConstant * kSpeedOfLight / wavelength_m;
}

double lidar_return_energy(const SystemParams& p, double alpha) {
  require_validated(p, "lidar_return_energy");
  require_alpha(alpha, "lidar_return_energy");
  double theta = p.lidar_half_angle_rad;
  double d = p.distance_m;
  double d6 = d * d * d * d * d * d;
  double al2 = p.lidar_aperture_radius_m * p.lidar_aperture_radius_m;
  return alpha * p.total_energy_j * p.radar_cross_section_m2 * al2 /
         (32.0 * kPi * kPi * theta * theta * d6);
}

LinkBudget link_budget(const SystemParams& p, double alpha) {
  LinkBudget lb;
  lb.alpha = alpha;
  lb.return_energy_j = lidar_return_energy(p, alpha);
  lb.photon_energy_j = p.photon_energy_resolved_j;
  lb.mean_photon_count = lb.return_energy_j / lb.photon_energy_j;
  return lb;
}

double beam_intensity(const SystemParams& p, double alpha, Vec2 point, Vec2 center) {
  require_validated(p, "beam_intensity");
  double rho2 = p.lidar_beam_radius_m * p.lidar_beam_radius_m;
  double dx = point.x - center.x;
  double dy = point.y - center.y;
  return alpha * p.total_energy_j / (2.0 * kPi * rho2) *
         std::exp(-(dx * dx + dy * dy) / (2.0 * rho2));
}

}  // namespace fso_acq
