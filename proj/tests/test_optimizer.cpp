#include <doctest.h>

#include <cmath>
#include <limits>

#include "fso_acq/acqstats.hpp"
#include "fso_acq/optimizer.hpp"

using namespace fso_acq;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("golden-section refinement recovers a convex minimizer") {
  auto f = [](double x) { return (x - 0.3123) * (x - 0.3123) + 2.0; };
  ScalarMinResult r = minimize_scalar(f, 0.01, 0.99, 1e-6, 64);
  CHECK(std::fabs(r.arg - 0.3123) < 1e-5);
  CHECK(r.value == doctest::Approx(2.0));
  CHECK(r.iterations > 0);
}

TEST_CASE("monotone objective resolves to the boundary") {
  ScalarMinResult inc = minimize_scalar([](double x) { return x; }, 0.0, 1.0,
                                        1e-6, 64);
  CHECK(inc.arg < 1e-5);
  ScalarMinResult dec = minimize_scalar([](double x) { return -x; }, 0.0, 1.0,
                                        1e-6, 64);
  CHECK(dec.arg > 1.0 - 1e-5);
}

TEST_CASE("plateaus break ties toward the smaller argument") {
  ScalarMinResult flat = minimize_scalar([](double) { return 1.0; }, 0.2, 0.8,
                                         1e-6, 64);
  CHECK(flat.arg == 0.2);
  // Piecewise: infinite on the left, flat valley in the middle.
  auto f = [](double x) {
    if (x < 0.4) return kInf;
    if (x < 0.6) return 5.0;
    return 6.0;
  };
  ScalarMinResult r = minimize_scalar(f, 0.0, 1.0, 1e-6, 101);
  CHECK(r.value == 5.0);
  CHECK(r.arg >= 0.4);
  CHECK(r.arg < 0.6);
}

TEST_CASE("an everywhere-infeasible objective is an error") {
  CHECK_THROWS_AS(minimize_scalar([](double) { return kInf; }, 0.0, 1.0, 1e-6, 32),
                  NoFeasiblePointError);
}

TEST_CASE("refinement never loses to the grid scan") {
  // A jagged objective where golden-section assumptions fail midway.
  auto f = [](double x) { return std::sin(40.0 * x) + 0.2 * x; };
  std::vector<double> grid = linspace(0.0, 1.0, 200);
  double grid_best = kInf;
  for (double x : grid) grid_best = std::min(grid_best, f(x));
  ScalarMinResult r = minimize_scalar(f, 0.0, 1.0, 1e-8, 200);
  CHECK(r.value <= grid_best);
  CHECK(r.value == f(r.arg));  // no stale caching
}

TEST_CASE("alpha sweep evaluates the analytic objective pointwise") {
  SystemParams p = validate(SystemParams{});
  std::vector<double> one = {0.5};
  auto pts = sweep_alpha(p, one, SweepObjective::MeanTime);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].alpha == 0.5);
  CHECK(pts[0].objective == expected_time(p, 0.5).expected_time_s);
  CHECK(pts[0].p_pulse == pulse_success_prob(p, 0.5).p_pulse);

  auto again = sweep_alpha(p, one, SweepObjective::MeanTime);
  CHECK(pts[0].objective == again[0].objective);  // purity, bitwise

  auto cdf_pts = sweep_alpha(p, one, SweepObjective::CdfAtT, 12.0);
  CHECK(cdf_pts[0].objective == acq_time_cdf(p, 0.5, 12.0));
}

TEST_CASE("mean time has an interior optimum on the baseline setup") {
  SystemParams p = validate(SystemParams{});
  std::vector<double> grid = linspace(0.005, 0.995, 200);
  auto pts = sweep_alpha(p, grid, SweepObjective::MeanTime);
  double best = kInf;
  double best_alpha = 0.0;
  for (const auto& pt : pts) {
    if (pt.objective < best) {
      best = pt.objective;
      best_alpha = pt.alpha;
    }
  }
  double at_05 = expected_time(p, 0.05).expected_time_s;
  double at_95 = expected_time(p, 0.95).expected_time_s;
  CHECK(best < at_05);
  CHECK(best < at_95);
  CHECK(best_alpha > 0.005);
  CHECK(best_alpha < 0.995);

  OptResult r = optimize_alpha_mean_time(p, 0.005, 0.995, 1e-5);
  CHECK(r.arg > 0.005);
  CHECK(r.arg < 0.995);
  CHECK(r.objective_value <= best);
  CHECK(r.objective_value == expected_time(p, r.arg).expected_time_s);
  CHECK(r.objective_value < expected_time(p, 0.005).expected_time_s);
  CHECK(r.objective_value < expected_time(p, 0.995).expected_time_s);
}

TEST_CASE("a larger pulse budget shifts the optimal split toward the FSO side") {
  SystemParams p5 = validate(SystemParams{});
  p5.max_pulses = 5;
  p5 = validate(p5);
  SystemParams p20 = p5;
  p20.max_pulses = 20;
  p20 = validate(p20);

  std::vector<double> grid = linspace(0.005, 0.995, 200);
  auto argmin = [&grid](const SystemParams& p) {
    auto pts = sweep_alpha(p, grid, SweepObjective::MeanTime);
    double best = kInf, arg = 0.0;
    for (const auto& pt : pts) {
      if (pt.objective < best) {
        best = pt.objective;
        arg = pt.alpha;
      }
    }
    return arg;
  };
  CHECK(argmin(p20) <= argmin(p5));
}

TEST_CASE("integer pulse-budget scan") {
  SystemParams p = validate(SystemParams{});
  OptResult r = optimize_n0(p, 2, 50, 0.6);
  int n_star = static_cast<int>(r.arg);
  CHECK(n_star > 2);
  CHECK(n_star < 50);
  SystemParams lo = p, hi = p;
  lo.max_pulses = 2;
  hi.max_pulses = 50;
  lo = validate(lo);
  hi = validate(hi);
  CHECK(r.objective_value <= expected_time(lo, 0.6).expected_time_s);
  CHECK(r.objective_value <= expected_time(hi, 0.6).expected_time_s);
  CHECK(r.grid.size() == 49);

  // Two-point scan picks the better one.
  OptResult two = optimize_n0(p, 2, 3, 0.6);
  CHECK((two.arg == 2.0 || two.arg == 3.0));
  CHECK_THROWS_AS(optimize_n0(p, 5, 5, 0.6), std::invalid_argument);

  // The scan is deterministic: repeated runs agree bitwise.
  OptResult again = optimize_n0(p, 2, 50, 0.6);
  CHECK(again.arg == r.arg);
  CHECK(again.objective_value == r.objective_value);
}

TEST_CASE("CDF optimization finds an interior argmax and rejects empty support") {
  SystemParams p = validate(SystemParams{});
  OptResult r = optimize_alpha_cdf(p, 0.005, 0.995, 1e-5, 12.0);
  CHECK(r.objective_value > 0.0);
  CHECK(r.objective_value <= 1.0);
  CHECK(r.objective_value == acq_time_cdf(p, r.arg, 12.0));

  // t below the minimum achievable time: no mass anywhere.
  CHECK_THROWS_AS(optimize_alpha_cdf(p, 0.1, 0.9, 1e-5, 1e-6),
                  NoFeasiblePointError);
}

TEST_CASE("CDF argmax is insensitive to the time threshold") {
  SystemParams p = validate(SystemParams{});
  double a8 = optimize_alpha_cdf(p, 0.005, 0.995, 1e-5, 8.0).arg;
  double a12 = optimize_alpha_cdf(p, 0.005, 0.995, 1e-5, 12.0).arg;
  double a16 = optimize_alpha_cdf(p, 0.005, 0.995, 1e-5, 16.0).arg;
  double step = (0.995 - 0.005) / 199.0;
  CHECK(std::fabs(a8 - a12) <= step);
  CHECK(std::fabs(a12 - a16) <= step);
}
