#include "fso_acq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fso_acq/acqstats.hpp"
#include "fso_acq/errors.hpp"

namespace fso_acq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SweepPoint evaluate_point(const SystemParams& p, double alpha,
                          SweepObjective objective, double t_s) {
  SweepPoint pt;
  pt.alpha = alpha;
  pt.n0 = p.max_pulses;
  AcqProbabilities ap = pulse_success_prob(p, alpha);
  pt.p_pulse = ap.p_pulse;
  pt.p_attempt = ap.p_attempt;
  bool paper_degenerate = p.normalization_mode == NormalizationMode::PaperFaithful &&
                          ap.p_pulse >= 1.0;
  if (objective == SweepObjective::MeanTime) {
    if (ap.p_pulse <= 0.0 || paper_degenerate) {
      pt.objective = kInf;
      return pt;
    }
    pt.objective = time_model_from_pulse_prob(ap.p_pulse, p.max_pulses, p.t1_s,
                                              p.t2_s, p.normalization_mode)
                       .expected_time_s;
  } else {
    if (ap.p_pulse <= 0.0) {
      pt.objective = 0.0;
      return pt;
    }
    if (paper_degenerate) {
      pt.objective = kInf;  // PaperFaithful normalizer diverges; skip
      return pt;
    }
    AcqTimeModel m = time_model_from_pulse_prob(ap.p_pulse, p.max_pulses, p.t1_s,
                                                p.t2_s, p.normalization_mode);
    pt.objective = acq_time_cdf(m, t_s);
  }
  return pt;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * i / (n - 1));
  }
  return out;
}

std::vector<SweepPoint> sweep_alpha(const SystemParams& p,
                                    std::span<const double> alpha_grid,
                                    SweepObjective objective, double t_s) {
  std::vector<SweepPoint> out;
  out.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    out.push_back(evaluate_point(p, alpha, objective, t_s));
  }
  return out;
}

ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double lo,
                                double hi, double tol, int grid_points) {
  if (!(lo < hi) || !(tol > 0.0) || grid_points < 3) {
    throw std::invalid_argument("minimize_scalar: bad bracket, tolerance or grid");
  }
  std::vector<double> grid = linspace(lo, hi, grid_points);
  int best = -1;
  double best_val = kInf;
  for (int i = 0; i < grid_points; ++i) {
    double v = f(grid[static_cast<std::size_t>(i)]);
    if (std::isfinite(v) && v < best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best < 0) {
    throw NoFeasiblePointError("minimize_scalar: objective not finite anywhere on the grid");
  }

  double a = grid[static_cast<std::size_t>(std::max(0, best - 1))];
  double b = grid[static_cast<std::size_t>(std::min(grid_points - 1, best + 1))];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int iters = 0;
  while (b - a > tol && iters < 200) {
    // Non-finite samples count as worse than anything finite; plateaus shrink
    // toward the left so ties resolve to the smaller argument.
    bool keep_left = !(std::isfinite(f2) && (!std::isfinite(f1) || f2 < f1));
    if (keep_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
    ++iters;
  }

  double cand = std::isfinite(f1) && (!std::isfinite(f2) || f1 <= f2) ? x1 : x2;
  double cand_val = f(cand);
  ScalarMinResult res;
  res.iterations = iters;
  // Refinement is monotone: never hand back anything worse than the scanned
  // optimum, and prefer the smaller argument on exact ties.
  double grid_best = grid[static_cast<std::size_t>(best)];
  if (std::isfinite(cand_val) &&
      (cand_val < best_val || (cand_val == best_val && cand < grid_best))) {
    res.arg = cand;
    res.value = cand_val;
  } else {
    res.arg = grid_best;
    res.value = best_val;
  }
  return res;
}

OptResult optimize_alpha_mean_time(const SystemParams& p, double lo, double hi,
                                   double tol) {
  if (!(0.0 < lo && lo < hi && hi < 1.0)) {
    throw std::invalid_argument("optimize_alpha_mean_time: requires 0 < lo < hi < 1");
  }
  OptResult out;
  std::vector<double> grid = linspace(lo, hi, 200);
  out.grid = sweep_alpha(p, grid, SweepObjective::MeanTime);
  auto objective = [&p](double alpha) {
    return evaluate_point(p, alpha, SweepObjective::MeanTime, 0.0).objective;
  };
  ScalarMinResult r = minimize_scalar(objective, lo, hi, tol, 200);
  out.arg = r.arg;
  out.objective_value = r.value;
  out.refinement_iterations = r.iterations;
  return out;
}

OptResult optimize_n0(const SystemParams& p, int n_lo, int n_hi, double alpha0) {
  if (!(2 <= n_lo && n_lo < n_hi)) {
    throw std::invalid_argument("optimize_n0: requires 2 <= n_lo < n_hi");
  }
  OptResult out;
  int best_n0 = -1;
  double best_val = kInf;
  for (int n0 = n_lo; n0 <= n_hi; ++n0) {
    SystemParams q = p;
    q.max_pulses = n0;
    q = validate(q);
    SweepPoint pt = evaluate_point(q, alpha0, SweepObjective::MeanTime, 0.0);
    out.grid.push_back(pt);
    if (std::isfinite(pt.objective) && pt.objective < best_val) {
      best_val = pt.objective;
      best_n0 = n0;
    }
  }
  if (best_n0 < 0) {
    throw NoFeasiblePointError("optimize_n0: E[T] not finite anywhere on the scan");
  }
  out.arg = best_n0;
  out.objective_value = best_val;
  out.refinement_iterations = 0;
  return out;
}

OptResult optimize_alpha_cdf(const SystemParams& p, double lo, double hi,
                             double tol, double t_s) {
  if (!(0.0 < lo && lo < hi && hi < 1.0)) {
    throw std::invalid_argument("optimize_alpha_cdf: requires 0 < lo < hi < 1");
  }
  if (!(t_s > 0.0)) {
    throw std::invalid_argument("optimize_alpha_cdf: requires t > 0");
  }
  OptResult out;
  std::vector<double> grid = linspace(lo, hi, 200);
  out.grid = sweep_alpha(p, grid, SweepObjective::CdfAtT, t_s);
  bool any_mass = false;
  for (const auto& pt : out.grid) {
    if (std::isfinite(pt.objective) && pt.objective > 0.0) {
      any_mass = true;
      break;
    }
  }
  if (!any_mass) {
    throw NoFeasiblePointError("optimize_alpha_cdf: CDF is zero on the whole bracket");
  }
  auto objective = [&p, t_s](double alpha) {
    double v = evaluate_point(p, alpha, SweepObjective::CdfAtT, t_s).objective;
    return std::isfinite(v) ? -v : kInf;
  };
  ScalarMinResult r = minimize_scalar(objective, lo, hi, tol, 200);
  out.arg = r.arg;
  out.objective_value = -r.value;
  out.refinement_iterations = r.iterations;
  return out;
}

}  // namespace fso_acq
