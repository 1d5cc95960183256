#include <doctest.h>

#include <cmath>
#include <limits>

#include "fso_acq/acqstats.hpp"
#include "fso_acq/simulator.hpp"

using namespace fso_acq;

namespace {

// Wide footprint + threshold at -inf forces every pulse to succeed: the miss
// draw can never reach the coverage edge within Box-Muller's dynamic range.
SystemParams sure_fire_params() {
  SystemParams p;
  p.fso_half_angle_rad = 5e-3;  // rho_f = 0.5 m, far beyond any sampled miss
  p.detection_threshold = -std::numeric_limits<double>::infinity();
  return validate(p);
}

bool summaries_equal(const SimSummary& a, const SimSummary& b) {
  if (a.trials != b.trials || a.seed != b.seed) return false;
  if (a.mean_time_s != b.mean_time_s) return false;
  if (a.mean_time_stderr_s != b.mean_time_stderr_s) return false;
  if (a.empirical_p_pulse != b.empirical_p_pulse) return false;
  if (a.p_pulse_stderr != b.p_pulse_stderr) return false;
  if (a.empirical_cdf.size() != b.empirical_cdf.size()) return false;
  for (std::size_t i = 0; i < a.empirical_cdf.size(); ++i) {
    if (a.empirical_cdf[i].t_s != b.empirical_cdf[i].t_s) return false;
    if (a.empirical_cdf[i].probability != b.empirical_cdf[i].probability) return false;
    if (a.empirical_cdf[i].stderr_est != b.empirical_cdf[i].stderr_est) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("certain detection succeeds on the first pulse") {
  SystemParams p = sure_fire_params();
  UncertaintySphere sphere = uncertainty_sphere(p, 0.5);
  RandomStream rng(1, 0);
  for (int i = 0; i < 50; ++i) {
    AttemptOutcome a =
        simulate_attempt(p, 0.5, sphere, SimFidelity::FaithfulToAnalytic, rng);
    CHECK(a.success);
    CHECK(a.pulses_used == 1);
  }
  RandomStream rng2(1, 0);
  TrialRecord rec =
      simulate_acquisition(p, 0.5, SimFidelity::FaithfulToAnalytic, rng2);
  CHECK(rec.attempts == 1);
  CHECK(rec.pulses_final_attempt == 1);
  CHECK(rec.total_time_s == doctest::Approx(p.t1_s + p.t2_s));
}

TEST_CASE("unreachable threshold exhausts the pulse budget") {
  SystemParams p;
  p.detection_threshold = std::numeric_limits<double>::infinity();
  p = validate(p);
  UncertaintySphere sphere = uncertainty_sphere(p, 0.5);
  RandomStream rng(2, 0);
  AttemptOutcome a =
      simulate_attempt(p, 0.5, sphere, SimFidelity::FaithfulToAnalytic, rng);
  CHECK_FALSE(a.success);
  CHECK(a.pulses_used == p.max_pulses);
}

TEST_CASE("trial records satisfy the time identity exactly") {
  SystemParams p = validate(SystemParams{});
  for (std::uint64_t s = 0; s < 20; ++s) {
    RandomStream rng(99, s);
    TrialRecord rec =
        simulate_acquisition(p, 0.35, SimFidelity::FaithfulToAnalytic, rng);
    double expect =
        static_cast<double>(rec.attempts) * p.t1_s +
        static_cast<double>((rec.attempts - 1) * p.max_pulses +
                            rec.pulses_final_attempt) *
            p.t2_s;
    CHECK(rec.total_time_s == expect);
    CHECK(rec.pulses_final_attempt >= 1);
    CHECK(rec.pulses_final_attempt <= p.max_pulses);
    CHECK(!rec.pulses_per_attempt.empty());
    CHECK(rec.pulses_per_attempt.back() == rec.pulses_final_attempt);
  }
}

TEST_CASE("fixed seed reproduces trials and is scheduling independent") {
  SystemParams p = validate(SystemParams{});
  RandomStream a(42, 7), b(42, 7);
  TrialRecord ra = simulate_acquisition(p, 0.4, SimFidelity::Physical, a);
  TrialRecord rb = simulate_acquisition(p, 0.4, SimFidelity::Physical, b);
  CHECK(ra.attempts == rb.attempts);
  CHECK(ra.total_time_s == rb.total_time_s);

  std::vector<double> grid = {0.002, 0.005, 0.02};
  SimSummary s1 = run_trials(p, 0.4, SimFidelity::FaithfulToAnalytic, 20000, 42,
                             grid, 1);
  SimSummary s2 = run_trials(p, 0.4, SimFidelity::FaithfulToAnalytic, 20000, 42,
                             grid, 4);
  SimSummary s3 = run_trials(p, 0.4, SimFidelity::FaithfulToAnalytic, 20000, 42,
                             grid, 16);
  CHECK(summaries_equal(s1, s2));
  CHECK(summaries_equal(s1, s3));
  SimSummary other = run_trials(p, 0.4, SimFidelity::FaithfulToAnalytic, 20000, 43,
                                grid, 2);
  CHECK_FALSE(summaries_equal(s1, other));
}

TEST_CASE("single-trial summary equals the trial") {
  SystemParams p = validate(SystemParams{});
  SimSummary s = run_trials(p, 0.5, SimFidelity::FaithfulToAnalytic, 1, 5,
                            {1.0}, 1);
  RandomStream rng(5, 0);
  TrialRecord rec = simulate_acquisition(p, 0.5, SimFidelity::FaithfulToAnalytic, rng);
  CHECK(s.trials == 1);
  CHECK(s.mean_time_s == rec.total_time_s);
  CHECK(s.mean_time_stderr_s == 0.0);
  CHECK(s.empirical_cdf[0].probability == (rec.total_time_s <= 1.0 ? 1.0 : 0.0));
}

TEST_CASE("faithful mode reproduces the analytic pulse statistics") {
  SystemParams p = validate(SystemParams{});
  for (double alpha : {0.3, 0.6}) {
    AcqProbabilities ap = pulse_success_prob(p, alpha);
    SimSummary s = run_trials(p, alpha, SimFidelity::FaithfulToAnalytic, 100000,
                              42, {}, 0);
    double pulses = static_cast<double>(s.trials) / s.empirical_p_pulse;
    CHECK(pulses >= 1e5);  // enough pulses for the 3-sigma band to be meaningful
    double se = std::sqrt(ap.p_pulse * (1.0 - ap.p_pulse) / pulses);
    CHECK(std::fabs(s.empirical_p_pulse - ap.p_pulse) < 3.0 * se);
  }
}

TEST_CASE("attempt success frequency matches the analytic p_attempt") {
  SystemParams p = validate(SystemParams{});
  // Low split keeps p_attempt well inside (0,1) so the band is informative.
  double alpha = 0.01;
  AcqProbabilities ap = pulse_success_prob(p, alpha);
  UncertaintySphere sphere = uncertainty_sphere(p, alpha);
  long n = 20000;
  long successes = 0;
  for (long i = 0; i < n; ++i) {
    RandomStream rng(4242, static_cast<std::uint64_t>(i));
    if (simulate_attempt(p, alpha, sphere, SimFidelity::FaithfulToAnalytic, rng)
            .success) {
      ++successes;
    }
  }
  double freq = static_cast<double>(successes) / n;
  double se = std::sqrt(ap.p_attempt * (1.0 - ap.p_attempt) / n);
  CHECK(std::fabs(freq - ap.p_attempt) < 3.0 * se);
}

TEST_CASE("faithful mode matches the analytic mean time and CDF") {
  SystemParams p = validate(SystemParams{});
  double alpha = 0.4;
  AcqTimeModel m = expected_time(p, alpha);
  std::vector<double> grid = {0.002, 0.003, 0.012};
  SimSummary s =
      run_trials(p, alpha, SimFidelity::FaithfulToAnalytic, 100000, 42, grid, 0);
  CHECK(std::fabs(s.mean_time_s - m.expected_time_s) < 3.0 * s.mean_time_stderr_s);
  for (const auto& pt : s.empirical_cdf) {
    double analytic = acq_time_cdf(m, pt.t_s);
    double se = std::max(pt.stderr_est,
                         std::sqrt(analytic * (1.0 - analytic) / s.trials));
    if (se == 0.0) {
      CHECK(pt.probability == analytic);
    } else {
      CHECK(std::fabs(pt.probability - analytic) < 3.0 * se);
    }
  }
}

TEST_CASE("physical mode runs and produces a plausible summary") {
  SystemParams p = validate(SystemParams{});
  p.energy_model = EnergyModel::PointDetector;
  p = validate(p);
  SimSummary s = run_trials(p, 0.5, SimFidelity::Physical, 20000, 42, {0.01}, 0);
  CHECK(s.empirical_p_pulse > 0.0);
  CHECK(s.empirical_p_pulse <= 1.0);
  CHECK(s.mean_time_s >= p.t1_s + p.t2_s);
  CHECK(s.rng_name == kRngDescription);
}

TEST_CASE("run_trials rejects a non-positive trial count") {
  SystemParams p = validate(SystemParams{});
  CHECK_THROWS_AS(
      run_trials(p, 0.5, SimFidelity::FaithfulToAnalytic, 0, 1, {}, 1),
      std::invalid_argument);
}
