#include "bmoo/problem.hpp"

#include <stdexcept>

#include "bmoo/doe.hpp"
#include "bmoo/math.hpp"

namespace bmoo {

EcsProblem::EcsProblem(ecs::FixedParameters params) : params_(params) {}

smc::Domain EcsProblem::domain() const {
  return doe::make_design_domain(params_);
}

EvalOutput EcsProblem::evaluate_raw(std::span<const double> x_raw) const {
  const ecs::DesignVector x = ecs::DesignVector::from_array(x_raw);
  const ecs::SimulationOutcome outcome = ecs::evaluate(x, params_);
  EvalOutput out;
  if (outcome.ok()) {
    out.success = true;
    out.objectives = {outcome.success->mass, outcome.success->entropy_rate};
    out.constraints.assign(outcome.success->constraints.begin(),
                           outcome.success->constraints.end());
  } else {
    out.failure_reason = outcome.failure->to_string();
  }
  return out;
}

std::vector<double> EcsProblem::to_raw(std::span<const double> x_norm) const {
  const auto arr = ecs::denormalize(x_norm).to_array();
  return {arr.begin(), arr.end()};
}

std::vector<double> EcsProblem::to_normalized(
    std::span<const double> x_raw) const {
  const auto arr = ecs::normalize(ecs::DesignVector::from_array(x_raw));
  return {arr.begin(), arr.end()};
}

std::vector<std::string> EcsProblem::variable_names() const {
  const auto& names = ecs::design_variable_names();
  return {names.begin(), names.end()};
}

std::vector<std::string> EcsProblem::objective_names() const {
  return {"mass_kg", "entropy_w_per_k"};
}

std::vector<std::string> EcsProblem::constraint_names() const {
  const auto& names = ecs::constraint_names();
  return {names.begin(), names.end()};
}

smc::Domain QuadraticPairProblem::domain() const {
  smc::Domain d;
  d.dim = 2;
  d.inside = nullptr;  // full box
  return d;
}

EvalOutput QuadraticPairProblem::evaluate_raw(std::span<const double> x) const {
  EvalOutput out;
  out.success = true;
  out.objectives = {sq(x[0] - 0.25) + sq(x[1] - 0.25),
                    sq(x[0] - 0.75) + sq(x[1] - 0.75)};
  return out;
}

std::unique_ptr<Problem> make_problem(const std::string& selector,
                                      const ecs::FixedParameters& params) {
  if (selector == "ecs") return std::make_unique<EcsProblem>(params);
  if (selector == "synthetic:quad2d") {
    return std::make_unique<QuadraticPairProblem>();
  }
  throw std::invalid_argument("unknown problem selector \"" + selector + "\"");
}

}  // namespace bmoo
