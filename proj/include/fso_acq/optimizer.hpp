#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fso_acq/model.hpp"

namespace fso_acq {

enum class SweepObjective { MeanTime, CdfAtT };

struct SweepPoint {
  double alpha = 0.0;
  int n0 = 0;
  double objective = 0.0;  // E[T] in seconds, or a CDF value; may be +inf
  double p_pulse = 0.0;
  double p_attempt = 0.0;
};

struct OptResult {
  double arg = 0.0;            // optimal alpha, or N0 cast to double
  double objective_value = 0.0;
  std::vector<SweepPoint> grid;
  int refinement_iterations = 0;
};

struct ScalarMinResult {
  double arg = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Evaluates the chosen objective on an alpha grid. Degenerate points never
/// throw: MeanTime reports +inf, CdfAtT reports 0 where the model has no mass.
std::vector<SweepPoint> sweep_alpha(const SystemParams& params,
                                    std::span<const double> alpha_grid,
                                    SweepObjective objective, double t_s = 0.0);

/// Coarse exhaustive grid scan (never assumes unimodality) followed by
/// golden-section refinement inside the bracket around the best grid point.
/// Ties break toward the smaller argument; the result is never worse than the
/// best grid point. Throws NoFeasiblePointError if no sample is finite.
ScalarMinResult minimize_scalar(const std::function<double(double)>& f, double lo,
                                double hi, double tol, int grid_points = 200);

/// Minimizes E[T] over alpha in (lo, hi) at fixed N0.
OptResult optimize_alpha_mean_time(const SystemParams& params, double lo,
                                   double hi, double tol);

/// Minimizes E[T] over the integers N0 in [n_lo, n_hi] at fixed alpha.
/// Exhaustive scan; the objective is not assumed unimodal in N0.
OptResult optimize_n0(const SystemParams& params, int n_lo, int n_hi,
                      double alpha0);

/// Maximizes P(T <= t) over alpha in (lo, hi). A CDF that is zero or
/// non-finite on the whole bracket is a NoFeasiblePointError.
OptResult optimize_alpha_cdf(const SystemParams& params, double lo, double hi,
                             double tol, double t_s);

/// Uniform grid of n points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace fso_acq
