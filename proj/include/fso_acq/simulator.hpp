#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fso_acq/acqstats.hpp"
#include "fso_acq/estimation.hpp"
#include "fso_acq/model.hpp"
#include "fso_acq/rng.hpp"

namespace fso_acq {

/// FaithfulToAnalytic realizes the analytic model exactly: each pulse draws an
/// independent combined miss vector and detects against the model's averaged
/// received energy, so per-pulse success is Bernoulli(p_N). Physical samples
/// the UAV offset once per attempt and computes each pulse's captured energy
/// from its actual miss distance, exposing the averaging (Jensen) gap.
enum class SimFidelity { FaithfulToAnalytic, Physical };

struct AttemptOutcome {
  bool success = false;
  int pulses_used = 0;
};

/// One simulated acquisition (attempts until success).
struct TrialRecord {
  std::int64_t attempts = 0;        // X
  int pulses_final_attempt = 0;     // N
  double total_time_s = 0.0;        // X*T1 + ((X-1)*N0 + N)*T2
  std::vector<int> pulses_per_attempt;  // diagnostics; capped at 1024 entries
};

struct EmpiricalCdfPoint {
  double t_s = 0.0;
  double probability = 0.0;
  double stderr_est = 0.0;
};

struct SimSummary {
  std::int64_t trials = 0;
  double mean_time_s = 0.0;
  double mean_time_stderr_s = 0.0;
  std::vector<EmpiricalCdfPoint> empirical_cdf;
  double empirical_p_pulse = 0.0;
  double p_pulse_stderr = 0.0;
  std::uint64_t seed = 0;
  std::string rng_name;
};

/// Fires up to N0 pulses at the uncertainty sphere; success on the first pulse
/// that covers the UAV aperture and clears the detection threshold.
AttemptOutcome simulate_attempt(const SystemParams& params, double alpha,
                                const UncertaintySphere& sphere,
                                SimFidelity fidelity, RandomStream& rng);

/// Repeats attempts (re-estimating the UAV location each time) until success.
/// Throws NonTerminationError after 1e9 attempts.
TrialRecord simulate_acquisition(const SystemParams& params, double alpha,
                                 SimFidelity fidelity, RandomStream& rng);

/// Runs n_trials independent acquisitions on substreams keyed by
/// (seed, trial index) and aggregates. Results depend only on (seed,
/// n_trials, cdf_grid), never on n_threads or scheduling (n_threads = 0
/// means hardware concurrency).
SimSummary run_trials(const SystemParams& params, double alpha,
                      SimFidelity fidelity, std::int64_t n_trials,
                      std::uint64_t seed, const std::vector<double>& cdf_grid,
                      int n_threads = 0);

const char* to_string(SimFidelity f);

}  // namespace fso_acq
