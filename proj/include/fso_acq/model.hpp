#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fso_acq/errors.hpp"

namespace fso_acq {

enum class SphereShape { Circular, Elliptical };
enum class EnergyModel { CoincidentCenters, PointDetector };
enum class NormalizationMode { PaperFaithful, Corrected };

/// Full parameter set for the dual lidar/FSO acquisition system. Defaults are
/// the baseline simulation setup; beam radii are always derived from the
/// half-angles and range, never set directly.
struct SystemParams {
  double total_energy_j = 10.0;             // E_t, split between lidar and FSO
  double distance_m = 100.0;                // D, ground station to UAV
  double lidar_half_angle_rad = 0.05;       // theta_l
  double fso_half_angle_rad = 5e-4;         // theta_f
  double lidar_aperture_radius_m = 0.5;     // a_l, lidar receive telescope
  double radar_cross_section_m2 = 0.2;      // sigma, UAV lidar cross-section
  double uav_aperture_radius_m = 0.01;      // rho_uav, UAV receive lens
  double azimuth_rad = 0.1;                 // phi
  double elevation_rad = 0.6;               // psi
  double focal_length_m = 1e-3;             // F, lidar receiver lens
  double array_area_m2 = 1e-6;              // |A|, focal-plane detector array
  double spot_radius_m = 1e-4;              // rho, focused spot on the array
  double wavelength_m = 1.55e-6;            // lambda
  double photoconversion_efficiency = 0.5;  // eta, in (0,1]
  double noise_std = 1e-5;                  // sigma_W, charge-equivalent units
  double false_alarm_prob = 1e-3;           // sets the threshold when not given
  double t1_s = 1e-3;                       // T1, lidar round trip + processing
  double t2_s = 1e-3;                       // T2, FSO inter-pulse interval
  int max_pulses = 10;                      // N0, FSO pulses per attempt

  // Optional overrides; derived during validation when absent.
  std::optional<double> photon_energy_j;     // default hc/lambda
  std::optional<double> detection_threshold; // default noise_std * Qinv(P_fa)

  SphereShape sphere_shape = SphereShape::Circular;
  EnergyModel energy_model = EnergyModel::CoincidentCenters;
  NormalizationMode normalization_mode = NormalizationMode::Corrected;

  // Filled by validate().
  double lidar_beam_radius_m = 0.0;   // rho_l = theta_l * D
  double fso_beam_radius_m = 0.0;     // rho_f = theta_f * D
  double photon_energy_resolved_j = 0.0;
  double threshold_resolved = 0.0;    // Upsilon_0
  bool validated = false;

  bool operator==(const SystemParams&) const = default;
};

/// Checks every invariant and returns the parameter set with derived fields
/// filled in. Throws ValidationError listing each violated field. Idempotent.
SystemParams validate(SystemParams params);

/// Applies one "key = value" assignment. Throws ConfigError on an unknown key
/// or an unparsable value. Clears the validated flag.
void set_param(SystemParams& params, std::string_view key, std::string_view value);

/// Parses a flat key=value config file ('#' starts a comment). Unknown keys
/// and duplicate keys are errors. Returns an unvalidated parameter set.
SystemParams load_config(const std::string& path);

const char* to_string(SphereShape s);
const char* to_string(EnergyModel m);
const char* to_string(NormalizationMode m);

}  // namespace fso_acq
