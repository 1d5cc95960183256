#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fso_acq/model.hpp"
#include "fso_acq/simulator.hpp"

namespace fso_acq::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { SweepAlpha, SweepN0, Cdf, Optimize, Simulate, Validate };

enum class OptimizeProblem { AlphaMeanTime, N0MeanTime, AlphaCdf };

/// Fully resolved experiment request; `run` is a pure function of this plus
/// the config file it names.
struct ExperimentSpec {
  Command command = Command::SweepAlpha;
  std::string config_path;  // empty = built-in defaults
  std::string output_dir = ".";
  std::vector<std::pair<std::string, std::string>> overrides;
  std::uint64_t seed = 42;
  std::int64_t trials = 100000;
  int grid_size = 200;
  std::vector<int> n0_list = {5, 10, 15, 20};  // sweep-alpha curves
  std::vector<int> n0_scan;                    // sweep-n0 points; filled by main
  std::vector<double> alpha_list = {0.5, 0.6, 0.7, 0.8};
  double t_threshold_s = 12.0;
  std::vector<double> cdf_times = {6.0, 12.0, 24.0};
  double alpha_lo = 0.005;
  double alpha_hi = 0.995;
  int n0_lo = 2;
  int n0_hi = 50;
  OptimizeProblem problem = OptimizeProblem::AlphaMeanTime;
  std::optional<NormalizationMode> mode;     // overrides the config when set
  std::optional<SimFidelity> fidelity;
  int n_threads = 0;  // 0 = FSO_ACQ_THREADS env or hardware concurrency
  bool quiet = false;  // suppress the stdout report (artifacts still written)
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericError = 2;
inline constexpr int kExitValidationFailure = 3;

/// Executes the experiment, writing CSV artifacts, a JSON manifest and a
/// plotting script into output_dir. Returns one of the kExit* codes.
int run(const ExperimentSpec& spec);

/// Round-trip-safe CSV number formatting (17 significant digits).
std::string format_number(double v);

}  // namespace fso_acq::cli
