#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bmoo::pareto {

/// One evaluated design in outcome space: objectives to minimize and
/// constraint values in "<= 0 is satisfied" normal form.
struct OutcomePoint {
  std::vector<double> objectives;
  std::vector<double> constraints;
  bool feasible = false;

  static OutcomePoint make(std::vector<double> objectives,
                           std::vector<double> constraints);
};

/// Bounding box of the extended (objective x positive-part-constraint)
/// space used by the improvement criterion. Constraint coordinates live in
/// [0, constraint_upper].
struct ExtendedBox {
  std::vector<double> obj_lower;
  std::vector<double> obj_upper;
  std::vector<double> constraint_upper;

  std::size_t num_objectives() const { return obj_lower.size(); }
  std::size_t num_constraints() const { return constraint_upper.size(); }
  double objective_volume() const;
  double constraint_volume() const;
};

/// Pareto domination: y <= y2 componentwise and y != y2.
/// Throws std::invalid_argument on length mismatch.
bool dominates(std::span<const double> y, std::span<const double> y2);

/// Maps an outcome into the extended space: feasible points keep their
/// objectives and land on the zero-violation slab; infeasible points
/// saturate the objective block at obj_upper and compete on their clipped
/// constraint violations.
std::vector<double> psi_map(const OutcomePoint& point, const ExtendedBox& box);

/// Indices of the feasible, mutually non-dominated points (objective
/// space domination among feasible points only).
std::vector<std::size_t> pareto_front(std::span<const OutcomePoint> points);

}  // namespace bmoo::pareto
