#include "bmoo/pareto.hpp"

#include <algorithm>
#include <stdexcept>

namespace bmoo::pareto {

OutcomePoint OutcomePoint::make(std::vector<double> objectives,
                                std::vector<double> constraints) {
  OutcomePoint point;
  point.objectives = std::move(objectives);
  point.constraints = std::move(constraints);
  point.feasible = std::all_of(point.constraints.begin(),
                               point.constraints.end(),
                               [](double c) { return c <= 0.0; });
  return point;
}

double ExtendedBox::objective_volume() const {
  double v = 1.0;
  for (std::size_t j = 0; j < obj_lower.size(); ++j) {
    v *= obj_upper[j] - obj_lower[j];
  }
  return v;
}

double ExtendedBox::constraint_volume() const {
  double v = 1.0;
  for (const double u : constraint_upper) v *= u;
  return v;
}

bool dominates(std::span<const double> y, std::span<const double> y2) {
  if (y.size() != y2.size()) {
    throw std::invalid_argument("dominates: objective length mismatch");
  }
  bool strict = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > y2[i]) return false;
    if (y[i] < y2[i]) strict = true;
  }
  return strict;
}

std::vector<double> psi_map(const OutcomePoint& point,
                            const ExtendedBox& box) {
  const std::size_t p = box.num_objectives();
  const std::size_t q = box.num_constraints();
  std::vector<double> image(p + q);
  for (std::size_t j = 0; j < p; ++j) {
    image[j] = point.feasible ? point.objectives[j] : box.obj_upper[j];
  }
  for (std::size_t i = 0; i < q; ++i) {
    image[p + i] = std::min(std::max(point.constraints[i], 0.0),
                            box.constraint_upper[i]);
  }
  return image;
}

std::vector<std::size_t> pareto_front(std::span<const OutcomePoint> points) {
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].feasible) feasible.push_back(i);
  }
  std::vector<std::size_t> front;
  for (const std::size_t i : feasible) {
    bool dominated = false;
    for (const std::size_t j : feasible) {
      if (i != j && dominates(points[j].objectives, points[i].objectives)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(i);
  }
  return front;
}

}  // namespace bmoo::pareto
