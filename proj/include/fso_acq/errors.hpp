#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fso_acq {

/// Bad config file, unknown key, or unparsable value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One or more parameter invariants violated; each entry is "field: reason".
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string msg = "parameter validation failed:";
    for (const auto& s : v) {
      msg += "\n  " + s;
    }
    return msg;
  }

  std::vector<std::string> violations_;
};

/// Adaptive quadrature ran out of subdivisions; carries the best estimate so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

/// Simulated acquisition exceeded the attempt cap (p_N effectively zero).
class NonTerminationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every candidate in an optimization scan was infeasible.
class NoFeasiblePointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fso_acq
