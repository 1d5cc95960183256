#include "fso_acq/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include <json.hpp>

#include "fso_acq/acqstats.hpp"
#include "fso_acq/errors.hpp"
#include "fso_acq/optimizer.hpp"

namespace fso_acq::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* command_name(Command c) {
  switch (c) {
    case Command::SweepAlpha: return "sweep-alpha";
    case Command::SweepN0: return "sweep-n0";
    case Command::Cdf: return "cdf";
    case Command::Optimize: return "optimize";
    case Command::Simulate: return "simulate";
    case Command::Validate: return "validate";
  }
  return "?";
}

const char* problem_name(OptimizeProblem p) {
  switch (p) {
    case OptimizeProblem::AlphaMeanTime: return "alpha_mean_time";
    case OptimizeProblem::N0MeanTime: return "n0_mean_time";
    case OptimizeProblem::AlphaCdf: return "alpha_cdf";
  }
  return "?";
}

SystemParams resolve_params(const ExperimentSpec& spec) {
  SystemParams p = spec.config_path.empty() ? SystemParams{}
                                            : load_config(spec.config_path);
  for (const auto& [key, value] : spec.overrides) {
    set_param(p, key, value);
  }
  if (spec.mode) p.normalization_mode = *spec.mode;
  return validate(p);
}

int resolve_threads(const ExperimentSpec& spec) {
  if (spec.n_threads > 0) return spec.n_threads;
  if (const char* env = std::getenv("FSO_ACQ_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write artifact: " + path.string());
  }
  out << body;
}

json params_to_json(const SystemParams& p) {
  json j;
  j["total_energy_j"] = p.total_energy_j;
  j["distance_m"] = p.distance_m;
  j["lidar_half_angle_rad"] = p.lidar_half_angle_rad;
  j["fso_half_angle_rad"] = p.fso_half_angle_rad;
  j["lidar_aperture_radius_m"] = p.lidar_aperture_radius_m;
  j["radar_cross_section_m2"] = p.radar_cross_section_m2;
  j["uav_aperture_radius_m"] = p.uav_aperture_radius_m;
  j["azimuth_rad"] = p.azimuth_rad;
  j["elevation_rad"] = p.elevation_rad;
  j["focal_length_m"] = p.focal_length_m;
  j["array_area_m2"] = p.array_area_m2;
  j["spot_radius_m"] = p.spot_radius_m;
  j["wavelength_m"] = p.wavelength_m;
  j["photoconversion_efficiency"] = p.photoconversion_efficiency;
  j["noise_std"] = p.noise_std;
  j["false_alarm_prob"] = p.false_alarm_prob;
  j["t1_s"] = p.t1_s;
  j["t2_s"] = p.t2_s;
  j["max_pulses"] = p.max_pulses;
  j["sphere_shape"] = to_string(p.sphere_shape);
  j["energy_model"] = to_string(p.energy_model);
  j["normalization_mode"] = to_string(p.normalization_mode);
  j["lidar_beam_radius_m"] = p.lidar_beam_radius_m;
  j["fso_beam_radius_m"] = p.fso_beam_radius_m;
  j["photon_energy_resolved_j"] = p.photon_energy_resolved_j;
  j["threshold_resolved"] = p.threshold_resolved;
  return j;
}

void write_manifest(const ExperimentSpec& spec, const SystemParams& p,
                    SimFidelity fidelity, const fs::path& dir) {
  json j;
  j["tool"] = "fso_acq";
  j["version"] = kVersion;
  j["command"] = command_name(spec.command);
  j["seed"] = spec.seed;
  j["trials"] = spec.trials;
  j["grid_size"] = spec.grid_size;
  j["n0_list"] = spec.n0_list;
  j["alpha_list"] = spec.alpha_list;
  j["t_threshold_s"] = spec.t_threshold_s;
  j["cdf_times_s"] = spec.cdf_times;
  j["alpha_bracket"] = {spec.alpha_lo, spec.alpha_hi};
  j["n0_bracket"] = {spec.n0_lo, spec.n0_hi};
  j["problem"] = problem_name(spec.problem);
  j["fidelity"] = to_string(fidelity);
  j["rng"] = kRngDescription;
  j["config_path"] = spec.config_path;
  json ov = json::array();
  for (const auto& [k, v] : spec.overrides) ov.push_back(k + "=" + v);
  j["overrides"] = ov;
  j["params"] = params_to_json(p);
  write_file(dir / "manifest.json", j.dump(2) + "\n");
}

void write_plot_script(const fs::path& dir, const std::string& name,
                       const std::string& csv, const std::string& x,
                       const std::string& y, const std::string& series) {
  std::string s;
  s += "#!/usr/bin/env python3\n";
  s += "# Plots " + csv + " (generated alongside the CSV; needs matplotlib).\n";
  s += "import csv\nimport collections\nimport matplotlib.pyplot as plt\n\n";
  s += "rows = list(csv.DictReader(open('" + csv + "')))\n";
  if (series.empty()) {
    s += "xs = [float(r['" + x + "']) for r in rows]\n";
    s += "ys = [float(r['" + y + "']) for r in rows]\n";
    s += "plt.plot(xs, ys, marker='.')\n";
  } else {
    s += "groups = collections.defaultdict(list)\n";
    s += "for r in rows:\n    groups[r['" + series + "']].append((float(r['" + x +
         "']), float(r['" + y + "'])))\n";
    s += "for key, pts in sorted(groups.items()):\n";
    s += "    plt.plot([p[0] for p in pts], [p[1] for p in pts], label='" + series +
         "=' + key)\n";
    s += "plt.legend()\n";
  }
  s += "plt.xlabel('" + x + "')\nplt.ylabel('" + y + "')\n";
  if (y == "expected_time_s") {
    s += "plt.yscale('log')\n";
  }
  s += "plt.savefig('" + name + ".png', dpi=150)\n";
  write_file(dir / ("plot_" + name + ".py"), s);
}

int run_sweep_alpha(const ExperimentSpec& spec, const SystemParams& base,
                    const fs::path& dir) {
  std::vector<double> grid = linspace(spec.alpha_lo, spec.alpha_hi, spec.grid_size);
  std::string body = "n0,alpha,expected_time_s,p_pulse,p_attempt\n";
  for (int n0 : spec.n0_list) {
    SystemParams p = base;
    p.max_pulses = n0;
    p = validate(p);
    for (const SweepPoint& pt : sweep_alpha(p, grid, SweepObjective::MeanTime)) {
      body += std::to_string(pt.n0) + "," + format_number(pt.alpha) + "," +
              format_number(pt.objective) + "," + format_number(pt.p_pulse) + "," +
              format_number(pt.p_attempt) + "\n";
    }
  }
  write_file(dir / "sweep_alpha.csv", body);
  write_plot_script(dir, "sweep_alpha", "sweep_alpha.csv", "alpha",
                    "expected_time_s", "n0");
  return kExitOk;
}

int run_sweep_n0(const ExperimentSpec& spec, const SystemParams& base,
                 const fs::path& dir) {
  std::vector<int> scan = spec.n0_scan;
  if (scan.empty()) {
    for (int n = spec.n0_lo; n <= spec.n0_hi; ++n) scan.push_back(n);
  }
  std::string body = "alpha,n0,expected_time_s,p_pulse,p_attempt\n";
  for (double alpha : spec.alpha_list) {
    for (int n0 : scan) {
      SystemParams p = base;
      p.max_pulses = n0;
      p = validate(p);
      AcqProbabilities ap = pulse_success_prob(p, alpha);
      AcqTimeModel m = time_model_from_pulse_prob(ap.p_pulse, n0, p.t1_s, p.t2_s,
                                                  p.normalization_mode);
      body += format_number(alpha) + "," + std::to_string(n0) + "," +
              format_number(m.expected_time_s) + "," + format_number(ap.p_pulse) +
              "," + format_number(ap.p_attempt) + "\n";
    }
  }
  write_file(dir / "sweep_n0.csv", body);
  write_plot_script(dir, "sweep_n0", "sweep_n0.csv", "n0", "expected_time_s",
                    "alpha");
  return kExitOk;
}

int run_cdf(const ExperimentSpec& spec, const SystemParams& base,
            const fs::path& dir) {
  std::vector<double> grid = linspace(spec.alpha_lo, spec.alpha_hi, spec.grid_size);
  std::string body = "alpha,cdf\n";
  for (const SweepPoint& pt :
       sweep_alpha(base, grid, SweepObjective::CdfAtT, spec.t_threshold_s)) {
    body += format_number(pt.alpha) + "," + format_number(pt.objective) + "\n";
  }
  write_file(dir / "cdf.csv", body);
  write_plot_script(dir, "cdf", "cdf.csv", "alpha", "cdf", "");
  return kExitOk;
}

int run_optimize(const ExperimentSpec& spec, const SystemParams& base,
                 const fs::path& dir) {
  OptResult res;
  switch (spec.problem) {
    case OptimizeProblem::AlphaMeanTime:
      res = optimize_alpha_mean_time(base, spec.alpha_lo, spec.alpha_hi, 1e-4);
      break;
    case OptimizeProblem::N0MeanTime:
      res = optimize_n0(base, spec.n0_lo, spec.n0_hi,
                        spec.alpha_list.empty() ? 0.6 : spec.alpha_list.front());
      break;
    case OptimizeProblem::AlphaCdf:
      res = optimize_alpha_cdf(base, spec.alpha_lo, spec.alpha_hi, 1e-4,
                               spec.t_threshold_s);
      break;
  }
  std::string body = "problem,arg,objective_value,refinement_iterations\n";
  body += std::string(problem_name(spec.problem)) + "," + format_number(res.arg) +
          "," + format_number(res.objective_value) + "," +
          std::to_string(res.refinement_iterations) + "\n";
  write_file(dir / "optimize_result.csv", body);

  std::string gbody = "alpha,n0,objective,p_pulse,p_attempt\n";
  for (const SweepPoint& pt : res.grid) {
    gbody += format_number(pt.alpha) + "," + std::to_string(pt.n0) + "," +
             format_number(pt.objective) + "," + format_number(pt.p_pulse) + "," +
             format_number(pt.p_attempt) + "\n";
  }
  write_file(dir / "optimize_grid.csv", gbody);
  if (!spec.quiet) {
    std::cout << problem_name(spec.problem) << ": arg=" << format_number(res.arg)
              << " objective=" << format_number(res.objective_value) << "\n";
  }
  return kExitOk;
}

double safe_z(double simulated, double analytic, double stderr_est) {
  double diff = simulated - analytic;
  if (stderr_est > 0.0) return diff / stderr_est;
  return std::fabs(diff) <= 1e-9 * std::max(1.0, std::fabs(analytic)) ? 0.0 : kInf;
}

int run_simulate(const ExperimentSpec& spec, const SystemParams& base,
                 SimFidelity fidelity, const fs::path& dir) {
  double alpha = spec.alpha_list.empty() ? 0.5 : spec.alpha_list.front();
  SimSummary s = run_trials(base, alpha, fidelity, spec.trials, spec.seed,
                            spec.cdf_times, resolve_threads(spec));
  std::string body =
      "trials,alpha,mean_time_s,mean_time_stderr_s,empirical_p_pulse,p_pulse_stderr,seed\n";
  body += std::to_string(s.trials) + "," + format_number(alpha) + "," +
          format_number(s.mean_time_s) + "," + format_number(s.mean_time_stderr_s) +
          "," + format_number(s.empirical_p_pulse) + "," +
          format_number(s.p_pulse_stderr) + "," + std::to_string(s.seed) + "\n";
  write_file(dir / "simulate_summary.csv", body);

  std::string cbody = "t_s,probability,stderr\n";
  for (const auto& pt : s.empirical_cdf) {
    cbody += format_number(pt.t_s) + "," + format_number(pt.probability) + "," +
             format_number(pt.stderr_est) + "\n";
  }
  write_file(dir / "simulate_cdf.csv", cbody);
  write_plot_script(dir, "simulate_cdf", "simulate_cdf.csv", "t_s", "probability",
                    "");
  return kExitOk;
}

int run_validate(const ExperimentSpec& spec, const SystemParams& base,
                 SimFidelity fidelity, const fs::path& dir) {
  std::string body = "alpha,quantity,analytic,simulated,stderr,z\n";
  bool failed = false;
  for (double alpha : spec.alpha_list) {
    SimSummary s = run_trials(base, alpha, fidelity, spec.trials, spec.seed,
                              spec.cdf_times, resolve_threads(spec));
    AcqProbabilities ap = pulse_success_prob(base, alpha);
    AcqTimeModel m = time_model_from_pulse_prob(ap.p_pulse, base.max_pulses,
                                                base.t1_s, base.t2_s,
                                                base.normalization_mode);
    auto add_row = [&](const std::string& name, double analytic, double simulated,
                       double se) {
      double z = safe_z(simulated, analytic, se);
      if (!(std::fabs(z) <= 3.0)) failed = true;
      body += format_number(alpha) + "," + name + "," + format_number(analytic) +
              "," + format_number(simulated) + "," + format_number(se) + "," +
              format_number(z) + "\n";
    };

    add_row("mean_time_s", m.expected_time_s, s.mean_time_s, s.mean_time_stderr_s);
    for (const auto& pt : s.empirical_cdf) {
      double analytic = acq_time_cdf(m, pt.t_s);
      double se = std::max(
          pt.stderr_est,
          std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(s.trials)));
      add_row("cdf@" + format_number(pt.t_s), analytic, pt.probability, se);
    }
    add_row("p_pulse", ap.p_pulse, s.empirical_p_pulse, s.p_pulse_stderr);
  }
  write_file(dir / "validate.csv", body);
  if (!spec.quiet) std::cout << body;
  return failed ? kExitValidationFailure : kExitOk;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run(const ExperimentSpec& spec) {
  try {
    SystemParams params = resolve_params(spec);
    SimFidelity fidelity = spec.fidelity.value_or(SimFidelity::FaithfulToAnalytic);
    fs::path dir(spec.output_dir);
    fs::create_directories(dir);
    write_manifest(spec, params, fidelity, dir);
    switch (spec.command) {
      case Command::SweepAlpha: return run_sweep_alpha(spec, params, dir);
      case Command::SweepN0: return run_sweep_n0(spec, params, dir);
      case Command::Cdf: return run_cdf(spec, params, dir);
      case Command::Optimize: return run_optimize(spec, params, dir);
      case Command::Simulate: return run_simulate(spec, params, fidelity, dir);
      case Command::Validate: return run_validate(spec, params, fidelity, dir);
    }
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericError;
  }
}

}  // namespace fso_acq::cli
