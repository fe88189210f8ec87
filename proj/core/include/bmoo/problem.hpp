#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmoo/ecs/model.hpp"
#include "bmoo/smc.hpp"

namespace bmoo {

/// Outcome of one problem evaluation. Failures carry no output values;
/// they only feed the observability classifier.
struct EvalOutput {
  bool success = false;
  std::vector<double> objectives;
  std::vector<double> constraints;
  std::string failure_reason;
};

/// Optimization problem seen by the loop: a box domain (normalized to the
/// unit cube), an optional truncation predicate, and a deterministic
/// evaluator. Evaluation happens in raw variable units so a logged row can
/// be replayed bit-exactly.
class Problem {
 public:
  virtual ~Problem() = default;
  virtual std::size_t dim() const = 0;
  virtual std::size_t num_objectives() const = 0;
  virtual std::size_t num_constraints() const = 0;
  /// Truncated domain in normalized coordinates.
  virtual smc::Domain domain() const = 0;
  virtual EvalOutput evaluate_raw(std::span<const double> x_raw) const = 0;
  virtual std::vector<double> to_raw(std::span<const double> x_norm) const = 0;
  virtual std::vector<double> to_normalized(
      std::span<const double> x_raw) const = 0;
  virtual std::vector<std::string> variable_names() const = 0;
  virtual std::vector<std::string> objective_names() const = 0;
  virtual std::vector<std::string> constraint_names() const = 0;
  virtual std::string name() const = 0;
};

/// The built-in design problem (18 variables, 2 objectives, 15
/// constraints, hidden constraints through simulation failures).
class EcsProblem final : public Problem {
 public:
  explicit EcsProblem(ecs::FixedParameters params);

  std::size_t dim() const override { return ecs::kNumDesignVariables; }
  std::size_t num_objectives() const override { return 2; }
  std::size_t num_constraints() const override { return ecs::kNumConstraints; }
  smc::Domain domain() const override;
  EvalOutput evaluate_raw(std::span<const double> x_raw) const override;
  std::vector<double> to_raw(std::span<const double> x_norm) const override;
  std::vector<double> to_normalized(std::span<const double> x_raw) const override;
  std::vector<std::string> variable_names() const override;
  std::vector<std::string> objective_names() const override;
  std::vector<std::string> constraint_names() const override;
  std::string name() const override { return "ecs"; }

  const ecs::FixedParameters& params() const { return params_; }

 private:
  ecs::FixedParameters params_;
};

/// Two-objective unconstrained quadratic pair on [0,1]^2; the trade-off
/// set is the segment between the two basins. Used as a cheap testbed.
class QuadraticPairProblem final : public Problem {
 public:
  std::size_t dim() const override { return 2; }
  std::size_t num_objectives() const override { return 2; }
  std::size_t num_constraints() const override { return 0; }
  smc::Domain domain() const override;
  EvalOutput evaluate_raw(std::span<const double> x_raw) const override;
  std::vector<double> to_raw(std::span<const double> x_norm) const override {
    return {x_norm.begin(), x_norm.end()};
  }
  std::vector<double> to_normalized(std::span<const double> x_raw) const override {
    return {x_raw.begin(), x_raw.end()};
  }
  std::vector<std::string> variable_names() const override { return {"x1", "x2"}; }
  std::vector<std::string> objective_names() const override { return {"f1", "f2"}; }
  std::vector<std::string> constraint_names() const override { return {}; }
  std::string name() const override { return "synthetic:quad2d"; }
};

/// selector: "ecs" or "synthetic:quad2d"; throws std::invalid_argument on
/// anything else.
std::unique_ptr<Problem> make_problem(const std::string& selector,
                                      const ecs::FixedParameters& params);

}  // namespace bmoo
