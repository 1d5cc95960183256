#include "fso_acq/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fso_acq/constants.hpp"
#include "fso_acq/errors.hpp"

namespace fso_acq {

namespace {

constexpr std::int64_t kMaxAttempts = 1'000'000'000;
constexpr std::int64_t kTrialsPerBlock = 4096;
constexpr std::size_t kHistoryCap = 1024;

// Everything an attempt needs, precomputed once per (params, alpha).
struct SimContext {
  SimFidelity fidelity = SimFidelity::FaithfulToAnalytic;
  int n0 = 0;
  double coverage_radius = 0.0;  // rho_f - rho_uav
  double miss_std_1 = 0.0;       // per-axis std of the combined miss vector
  double miss_std_2 = 0.0;
  double uav_std_1 = 0.0;        // physical mode: UAV location std per axis
  double uav_std_2 = 0.0;
  double fire_std_1 = 0.0;       // physical mode: firing distribution std
  double fire_std_2 = 0.0;
  double analytic_charge = 0.0;  // eta * E_uav from the configured energy model
  double point_charge_peak = 0.0;  // eta * per-pulse point-detector peak energy
  double inv_two_rhof2 = 0.0;
  double threshold = 0.0;
  double noise_std = 0.0;
  double t1_s = 0.0;
  double t2_s = 0.0;
};

SimContext make_context(const SystemParams& p, double alpha,
                        const UncertaintySphere& sphere, SimFidelity fidelity) {
  if (!p.validated) {
    throw std::invalid_argument("simulator: params must be validated");
  }
  SimContext c;
  c.fidelity = fidelity;
  c.n0 = p.max_pulses;
  c.coverage_radius = p.fso_beam_radius_m - p.uav_aperture_radius_m;
  double d2 = sphere.distance_m * sphere.distance_m;
  double uav_var_1 = sphere.sigma_e_az * sphere.sigma_e_az * d2;
  double uav_var_2 = sphere.sigma_e_el * sphere.sigma_e_el * d2;
  c.miss_std_1 = std::sqrt(sphere.firing_var_1_m2 + uav_var_1);
  c.miss_std_2 = std::sqrt(sphere.firing_var_2_m2 + uav_var_2);
  c.uav_std_1 = std::sqrt(uav_var_1);
  c.uav_std_2 = std::sqrt(uav_var_2);
  c.fire_std_1 = std::sqrt(sphere.firing_var_1_m2);
  c.fire_std_2 = std::sqrt(sphere.firing_var_2_m2);

  double v1 = sphere.firing_var_1_m2 + uav_var_1;
  double v2 = sphere.firing_var_2_m2 + uav_var_2;
  double scalar_var = p.sphere_shape == SphereShape::Circular ? v1 : 0.5 * (v1 + v2);
  double e_uav = p.energy_model == EnergyModel::CoincidentCenters
                     ? received_energy_coincident(p, alpha)
                     : received_energy_point(p, alpha, scalar_var);
  c.analytic_charge = p.photoconversion_efficiency * e_uav;

  double rf2 = p.fso_beam_radius_m * p.fso_beam_radius_m;
  double r2 = p.uav_aperture_radius_m * p.uav_aperture_radius_m;
  c.point_charge_peak = p.photoconversion_efficiency * (1.0 - alpha) *
                        p.total_energy_j / p.max_pulses * r2 / (2.0 * rf2);
  c.inv_two_rhof2 = 1.0 / (2.0 * rf2);
  c.threshold = p.threshold_resolved;
  c.noise_std = p.noise_std;
  c.t1_s = p.t1_s;
  c.t2_s = p.t2_s;
  return c;
}

AttemptOutcome run_attempt(const SimContext& c, RandomStream& rng) {
  AttemptOutcome out;
  double ux = 0.0, uy = 0.0;
  if (c.fidelity == SimFidelity::Physical) {
    ux = c.uav_std_1 * rng.normal();
    uy = c.uav_std_2 * rng.normal();
  }
  double r2 = c.coverage_radius * c.coverage_radius;
  for (int pulse = 1; pulse <= c.n0; ++pulse) {
    double dx, dy;
    if (c.fidelity == SimFidelity::FaithfulToAnalytic) {
      dx = c.miss_std_1 * rng.normal();
      dy = c.miss_std_2 * rng.normal();
    } else {
      dx = c.fire_std_1 * rng.normal() - ux;
      dy = c.fire_std_2 * rng.normal() - uy;
    }
    double miss2 = dx * dx + dy * dy;
    bool covered = miss2 < r2;
    double charge = c.fidelity == SimFidelity::FaithfulToAnalytic
                        ? c.analytic_charge
                        : c.point_charge_peak * std::exp(-miss2 * c.inv_two_rhof2);
    double received = charge + c.noise_std * rng.normal();
    if (covered && received > c.threshold) {
      out.success = true;
      out.pulses_used = pulse;
      return out;
    }
  }
  out.success = false;
  out.pulses_used = c.n0;
  return out;
}

TrialRecord run_trial(const SimContext& c, RandomStream& rng, bool keep_history) {
  TrialRecord rec;
  for (std::int64_t attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    AttemptOutcome a = run_attempt(c, rng);
    if (keep_history && rec.pulses_per_attempt.size() < kHistoryCap) {
      rec.pulses_per_attempt.push_back(a.pulses_used);
    }
    if (a.success) {
      rec.attempts = attempt;
      rec.pulses_final_attempt = a.pulses_used;
      double pulse_slots = static_cast<double>((attempt - 1) * c.n0 + a.pulses_used);
      rec.total_time_s = static_cast<double>(attempt) * c.t1_s + pulse_slots * c.t2_s;
      return rec;
    }
  }
  throw NonTerminationError(
      "simulate_acquisition: attempt cap reached, per-pulse success is effectively zero");
}

struct BlockStats {
  double time_sum = 0.0;
  double time_sum_sq = 0.0;
  std::vector<std::int64_t> cdf_counts;
  std::int64_t pulses_fired = 0;
  std::int64_t successes = 0;
};

}  // namespace

const char* to_string(SimFidelity f) {
  return f == SimFidelity::FaithfulToAnalytic ? "faithful" : "physical";
}

AttemptOutcome simulate_attempt(const SystemParams& params, double alpha,
                                const UncertaintySphere& sphere,
                                SimFidelity fidelity, RandomStream& rng) {
  SimContext c = make_context(params, alpha, sphere, fidelity);
  return run_attempt(c, rng);
}

TrialRecord simulate_acquisition(const SystemParams& params, double alpha,
                                 SimFidelity fidelity, RandomStream& rng) {
  UncertaintySphere sphere = uncertainty_sphere(params, alpha);
  SimContext c = make_context(params, alpha, sphere, fidelity);
  return run_trial(c, rng, /*keep_history=*/true);
}

SimSummary run_trials(const SystemParams& params, double alpha,
                      SimFidelity fidelity, std::int64_t n_trials,
                      std::uint64_t seed, const std::vector<double>& cdf_grid,
                      int n_threads) {
  if (n_trials < 1) {
    throw std::invalid_argument("run_trials: n_trials must be >= 1");
  }
  UncertaintySphere sphere = uncertainty_sphere(params, alpha);
  SimContext ctx = make_context(params, alpha, sphere, fidelity);

  std::int64_t n_blocks = (n_trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<BlockStats> blocks(static_cast<std::size_t>(n_blocks));

  int workers = n_threads > 0 ? n_threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > n_blocks) workers = static_cast<int>(n_blocks);

  std::atomic<std::int64_t> next_block{0};
  std::exception_ptr failure = nullptr;
  std::mutex failure_mutex;

  auto worker_fn = [&]() {
    try {
      for (;;) {
        std::int64_t b = next_block.fetch_add(1);
        if (b >= n_blocks) break;
        BlockStats stats;
        stats.cdf_counts.assign(cdf_grid.size(), 0);
        std::int64_t lo = b * kTrialsPerBlock;
        std::int64_t hi = std::min(n_trials, lo + kTrialsPerBlock);
        for (std::int64_t i = lo; i < hi; ++i) {
          RandomStream rng(seed, static_cast<std::uint64_t>(i));
          TrialRecord rec = run_trial(ctx, rng, /*keep_history=*/false);
          stats.time_sum += rec.total_time_s;
          stats.time_sum_sq += rec.total_time_s * rec.total_time_s;
          stats.pulses_fired += (rec.attempts - 1) * ctx.n0 + rec.pulses_final_attempt;
          stats.successes += 1;
          for (std::size_t g = 0; g < cdf_grid.size(); ++g) {
            if (rec.total_time_s <= cdf_grid[g]) stats.cdf_counts[g] += 1;
          }
        }
        blocks[static_cast<std::size_t>(b)] = std::move(stats);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Merge in block order so the floating-point reduction is independent of
  // which worker produced which block.
  double sum = 0.0, sum_sq = 0.0;
  std::int64_t pulses = 0, successes = 0;
  std::vector<std::int64_t> counts(cdf_grid.size(), 0);
  for (const auto& b : blocks) {
    sum += b.time_sum;
    sum_sq += b.time_sum_sq;
    pulses += b.pulses_fired;
    successes += b.successes;
    for (std::size_t g = 0; g < counts.size(); ++g) counts[g] += b.cdf_counts[g];
  }

  SimSummary out;
  out.trials = n_trials;
  out.seed = seed;
  out.rng_name = kRngDescription;
  double n = static_cast<double>(n_trials);
  out.mean_time_s = sum / n;
  if (n_trials > 1) {
    double var = (sum_sq - n * out.mean_time_s * out.mean_time_s) / (n - 1.0);
    if (var < 0.0) var = 0.0;  // rounding guard
    out.mean_time_stderr_s = std::sqrt(var / n);
  }
  out.empirical_cdf.reserve(cdf_grid.size());
  for (std::size_t g = 0; g < cdf_grid.size(); ++g) {
    double p = static_cast<double>(counts[g]) / n;
    out.empirical_cdf.push_back({cdf_grid[g], p, std::sqrt(p * (1.0 - p) / n)});
  }
  double total_pulses = static_cast<double>(pulses);
  out.empirical_p_pulse = static_cast<double>(successes) / total_pulses;
  out.p_pulse_stderr =
      std::sqrt(out.empirical_p_pulse * (1.0 - out.empirical_p_pulse) / total_pulses);
  return out;
}

}  // namespace fso_acq
