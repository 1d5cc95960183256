#include "fso_acq/model.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "fso_acq/constants.hpp"
#include "fso_acq/specfun.hpp"

namespace fso_acq {

namespace {

std::string_view trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  std::string v(value);
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || v.empty()) {
    throw ConfigError("bad numeric value for " + std::string(key) + ": '" + v + "'");
  }
  return x;
}

int parse_int(std::string_view key, std::string_view value) {
  std::string v(value);
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || v.empty()) {
    throw ConfigError("bad integer value for " + std::string(key) + ": '" + v + "'");
  }
  return static_cast<int>(x);
}

}  // namespace

const char* to_string(SphereShape s) {
  return s == SphereShape::Circular ? "circular" : "elliptical";
}

const char* to_string(EnergyModel m) {
  return m == EnergyModel::CoincidentCenters ? "coincident_centers" : "point_detector";
}

const char* to_string(NormalizationMode m) {
  return m == NormalizationMode::PaperFaithful ? "paper_faithful" : "corrected";
}

void set_param(SystemParams& p, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "total_energy_j") p.total_energy_j = parse_double(key, value);
  else if (key == "distance_m") p.distance_m = parse_double(key, value);
  else if (key == "lidar_half_angle_rad") p.lidar_half_angle_rad = parse_double(key, value);
  else if (key == "fso_half_angle_rad") p.fso_half_angle_rad = parse_double(key, value);
  else if (key == "lidar_aperture_radius_m") p.lidar_aperture_radius_m = parse_double(key, value);
  else if (key == "radar_cross_section_m2") p.radar_cross_section_m2 = parse_double(key, value);
  else if (key == "uav_aperture_radius_m") p.uav_aperture_radius_m = parse_double(key, value);
  else if (key == "azimuth_rad") p.azimuth_rad = parse_double(key, value);
  else if (key == "elevation_rad") p.elevation_rad = parse_double(key, value);
  else if (key == "focal_length_m") p.focal_length_m = parse_double(key, value);
  else if (key == "array_area_m2") p.array_area_m2 = parse_double(key, value);
  else if (key == "spot_radius_m") p.spot_radius_m = parse_double(key, value);
  else if (key == "wavelength_m") p.wavelength_m = parse_double(key, value);
  else if (key == "photon_energy_j") p.photon_energy_j = parse_double(key, value);
  else if (key == "photoconversion_efficiency") p.photoconversion_efficiency = parse_double(key, value);
  else if (key == "noise_std") p.noise_std = parse_double(key, value);
  else if (key == "detection_threshold") p.detection_threshold = parse_double(key, value);
  else if (key == "false_alarm_prob") p.false_alarm_prob = parse_double(key, value);
  else if (key == "t1_s") p.t1_s = parse_double(key, value);
  else if (key == "t2_s") p.t2_s = parse_double(key, value);
  else if (key == "max_pulses") p.max_pulses = parse_int(key, value);
  else if (key == "sphere_shape") {
    if (value == "circular") p.sphere_shape = SphereShape::Circular;
    else if (value == "elliptical") p.sphere_shape = SphereShape::Elliptical;
    else throw ConfigError("sphere_shape must be circular|elliptical, got '" + std::string(value) + "'");
  } else if (key == "energy_model") {
    if (value == "coincident_centers") p.energy_model = EnergyModel::CoincidentCenters;
    else if (value == "point_detector") p.energy_model = EnergyModel::PointDetector;
    else throw ConfigError("energy_model must be coincident_centers|point_detector, got '" + std::string(value) + "'");
  } else if (key == "normalization_mode") {
    if (value == "paper_faithful") p.normalization_mode = NormalizationMode::PaperFaithful;
    else if (value == "corrected") p.normalization_mode = NormalizationMode::Corrected;
    else throw ConfigError("normalization_mode must be paper_faithful|corrected, got '" + std::string(value) + "'");
  } else {
    throw ConfigError("unknown config key: '" + std::string(key) + "'");
  }
  p.validated = false;
}

SystemParams load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  SystemParams p;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (size_t hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    sv = trim(sv);
    if (sv.empty()) continue;
    size_t eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key(trim(sv.substr(0, eq)));
    if (!seen.insert(key).second) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    set_param(p, key, sv.substr(eq + 1));
  }
  return p;
}

SystemParams validate(SystemParams p) {
  std::vector<std::string> bad;
  auto require = [&bad](bool ok, const char* field, const char* reason) {
    if (!ok) bad.push_back(std::string(field) + ": " + reason);
  };

  require(p.total_energy_j > 0.0, "total_energy_j", "must be > 0");
  require(p.distance_m > 0.0, "distance_m", "must be > 0");
  require(p.lidar_half_angle_rad > 0.0, "lidar_half_angle_rad", "must be > 0");
  require(p.fso_half_angle_rad > 0.0, "fso_half_angle_rad", "must be > 0");
  require(p.fso_half_angle_rad < p.lidar_half_angle_rad, "fso_half_angle_rad",
          "must be < lidar_half_angle_rad");
  require(p.lidar_aperture_radius_m > 0.0, "lidar_aperture_radius_m", "must be > 0");
  require(p.radar_cross_section_m2 > 0.0, "radar_cross_section_m2", "must be > 0");
  require(p.uav_aperture_radius_m > 0.0, "uav_aperture_radius_m", "must be > 0");
  require(p.azimuth_rad > 0.0 && p.azimuth_rad < 0.5 * kPi, "azimuth_rad",
          "must be in (0, pi/2)");
  require(p.elevation_rad > 0.0 && p.elevation_rad < 0.5 * kPi, "elevation_rad",
          "must be in (0, pi/2)");
  require(p.focal_length_m > 0.0, "focal_length_m", "must be > 0");
  require(p.array_area_m2 > 0.0, "array_area_m2", "must be > 0");
  require(p.spot_radius_m > 0.0, "spot_radius_m", "must be > 0");
  require(p.wavelength_m > 0.0, "wavelength_m", "must be > 0");
  require(p.photoconversion_efficiency > 0.0 && p.photoconversion_efficiency <= 1.0,
          "photoconversion_efficiency", "must be in (0,1]");
  require(p.noise_std > 0.0, "noise_std", "must be > 0");
  require(p.false_alarm_prob > 0.0 && p.false_alarm_prob < 1.0, "false_alarm_prob",
          "must be in (0,1)");
  require(p.t1_s > 0.0, "t1_s", "must be > 0");
  require(p.t2_s > 0.0, "t2_s", "must be > 0");
  require(p.max_pulses >= 2, "max_pulses", "must be >= 2");
  if (p.photon_energy_j) {
    require(*p.photon_energy_j > 0.0, "photon_energy_j", "must be > 0");
  }
  if (p.detection_threshold) {
    require(!std::isnan(*p.detection_threshold), "detection_threshold", "must not be NaN");
  }

  // FSO footprint must be strictly larger than the UAV aperture, otherwise a
  // pulse can never fully cover the receiver.
  double rho_f = p.fso_half_angle_rad * p.distance_m;
  if (p.fso_half_angle_rad > 0.0 && p.distance_m > 0.0 &&
      p.uav_aperture_radius_m >= rho_f) {
    bad.push_back("uav_aperture_radius_m: geometric infeasibility, requires "
                  "uav_aperture_radius_m < fso_half_angle_rad * distance_m");
  }

  if (!bad.empty()) {
    throw ValidationError(std::move(bad));
  }

  p.lidar_beam_radius_m = p.lidar_half_angle_rad * p.distance_m;
  p.fso_beam_radius_m = rho_f;
  p.photon_energy_resolved_j =
      p.photon_energy_j ? *p.photon_energy_j
                        : kPlanckConstant * kSpeedOfLight / p.wavelength_m;
  p.threshold_resolved =
      p.detection_threshold ? *p.detection_threshold
                            : p.noise_std * specfun::gaussian_q_inv(p.false_alarm_prob);
  p.validated = true;
  return p;
}

}  // namespace fso_acq
