#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "fso_acq/cli.hpp"

namespace {

using fso_acq::NormalizationMode;
using fso_acq::SimFidelity;
using fso_acq::cli::Command;
using fso_acq::cli::ExperimentSpec;
using fso_acq::cli::OptimizeProblem;

void add_common(CLI::App* cmd, ExperimentSpec& spec,
                std::vector<std::string>& overrides, std::string& mode,
                std::string& fidelity) {
  cmd->add_option("--config", spec.config_path, "Config file (key = value lines)");
  cmd->add_option("--out", spec.output_dir, "Output directory for artifacts");
  cmd->add_option("--set", overrides, "Override a config key, e.g. --set max_pulses=20")
      ->take_all();
  cmd->add_option("--seed", spec.seed, "RNG seed");
  cmd->add_option("--trials", spec.trials, "Monte Carlo trial count");
  cmd->add_option("--grid", spec.grid_size, "Alpha grid size");
  cmd->add_option("--n0", spec.n0_list, "N0 values (comma separated)")->delimiter(',');
  cmd->add_option("--alpha", spec.alpha_list, "Alpha values (comma separated)")
      ->delimiter(',');
  cmd->add_option("--t", spec.t_threshold_s, "Time threshold in seconds");
  cmd->add_option("--mode", mode, "Normalization mode: paper|corrected");
  cmd->add_option("--fidelity", fidelity, "Simulator fidelity: faithful|physical");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lidar-assisted FSO acquisition: analytics, simulation, optimization"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::vector<std::string> overrides;
  std::string mode, fidelity, problem;
  bool alpha_given = false;

  auto* sweep_alpha = app.add_subcommand("sweep-alpha", "E[T] over an alpha grid per N0");
  auto* sweep_n0 = app.add_subcommand("sweep-n0", "E[T] over an N0 range per alpha");
  auto* cdf = app.add_subcommand("cdf", "P(T <= t) over an alpha grid");
  auto* optimize = app.add_subcommand("optimize", "Solve one of the optimization problems");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run at one alpha");
  auto* validate = app.add_subcommand("validate", "Analytics vs Monte Carlo with z-scores");

  for (auto* cmd : {sweep_alpha, sweep_n0, cdf, optimize, simulate, validate}) {
    add_common(cmd, spec, overrides, mode, fidelity);
  }
  optimize->add_option("--problem", problem,
                       "alpha-mean-time (default) | n0-mean-time | alpha-cdf");
  std::vector<int> n0_range;
  optimize->add_option("--n0-range", n0_range, "N0 scan bounds, e.g. 2,50")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : fso_acq::cli::kExitConfigError;
  }

  for (const auto& kv : overrides) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "config error: --set expects key=value, got '" << kv << "'\n";
      return fso_acq::cli::kExitConfigError;
    }
    spec.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!mode.empty()) {
    if (mode == "paper") spec.mode = NormalizationMode::PaperFaithful;
    else if (mode == "corrected") spec.mode = NormalizationMode::Corrected;
    else {
      std::cerr << "config error: --mode must be paper|corrected\n";
      return fso_acq::cli::kExitConfigError;
    }
  }
  if (!fidelity.empty()) {
    if (fidelity == "faithful") spec.fidelity = SimFidelity::FaithfulToAnalytic;
    else if (fidelity == "physical") spec.fidelity = SimFidelity::Physical;
    else {
      std::cerr << "config error: --fidelity must be faithful|physical\n";
      return fso_acq::cli::kExitConfigError;
    }
  }
  if (!problem.empty()) {
    if (problem == "alpha-mean-time") spec.problem = OptimizeProblem::AlphaMeanTime;
    else if (problem == "n0-mean-time") spec.problem = OptimizeProblem::N0MeanTime;
    else if (problem == "alpha-cdf") spec.problem = OptimizeProblem::AlphaCdf;
    else {
      std::cerr << "config error: --problem must be "
                   "alpha-mean-time|n0-mean-time|alpha-cdf\n";
      return fso_acq::cli::kExitConfigError;
    }
  }

  if (!n0_range.empty()) {
    if (n0_range.size() != 2 || !(n0_range[0] < n0_range[1])) {
      std::cerr << "config error: --n0-range expects min,max with min < max\n";
      return fso_acq::cli::kExitConfigError;
    }
    spec.n0_lo = n0_range[0];
    spec.n0_hi = n0_range[1];
  }

  alpha_given = sweep_n0->count("--alpha") > 0 || validate->count("--alpha") > 0 ||
                simulate->count("--alpha") > 0 || optimize->count("--alpha") > 0;

  if (sweep_alpha->parsed()) spec.command = Command::SweepAlpha;
  else if (sweep_n0->parsed()) spec.command = Command::SweepN0;
  else if (cdf->parsed()) spec.command = Command::Cdf;
  else if (optimize->parsed()) spec.command = Command::Optimize;
  else if (simulate->parsed()) spec.command = Command::Simulate;
  else spec.command = Command::Validate;

  // Per-command default alpha lists when none given on the command line.
  if (!alpha_given) {
    if (spec.command == Command::Validate) spec.alpha_list = {0.3, 0.5, 0.7};
    else if (spec.command == Command::Simulate) spec.alpha_list = {0.5};
    else if (spec.command == Command::Optimize) spec.alpha_list = {0.6};
  }

  // sweep-n0 scans the --n0 list when given, else the full 2..50 range.
  if (spec.command == Command::SweepN0 && sweep_n0->count("--n0") > 0) {
    spec.n0_scan = spec.n0_list;
  } else {
    for (int n = spec.n0_lo; n <= spec.n0_hi; ++n) spec.n0_scan.push_back(n);
  }

  return fso_acq::cli::run(spec);
}
