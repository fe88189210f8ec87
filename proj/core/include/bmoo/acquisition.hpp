#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bmoo/gp.hpp"
#include "bmoo/pareto.hpp"
#include "bmoo/rng.hpp"

namespace bmoo::acq {

/// Nearest-neighbour classifier over observed/failed simulator calls.
/// Inputs are expected in normalized (unit box) coordinates.
class ObservabilityModel {
 public:
  static ObservabilityModel build(std::vector<std::vector<double>> inputs,
                                  std::vector<bool> observed, int k = 5);

  /// Fraction of the min(k, n) nearest labeled points that were observed;
  /// distance ties break by insertion order. Empty model returns 1.0.
  double p_observable(std::span<const double> x) const;

  std::size_t size() const { return inputs_.size(); }
  int k() const { return k_; }

 private:
  std::vector<std::vector<double>> inputs_;
  std::vector<bool> observed_;
  int k_ = 5;
};

struct BoxConfig {
  double objective_padding = 0.2;
  double violation_percentile = 0.95;
  double constraint_floor = 1.0;
  std::vector<double> default_obj_lower;  ///< used before any feasible point
  std::vector<double> default_obj_upper;
};

/// Rebuilds the extended box each iteration: objective bounds from the
/// min/max of observed feasible objectives (padded), constraint uppers
/// from the violation percentile with a floor.
pareto::ExtendedBox refresh_box(std::span<const pareto::OutcomePoint> points,
                                std::size_t num_objectives,
                                std::size_t num_constraints,
                                const BoxConfig& config);

/// Monte-Carlo reference set over the psi-image of the extended box.
/// Before any feasible observation all M points live on the violation
/// sheet (constraint block only); afterwards half lie on the feasible
/// slab (objective block, zero violation) and half on the sheet. Each
/// block carries its own volume weight.
struct McReferenceSet {
  pareto::ExtendedBox box;
  bool objective_block_active = false;
  std::vector<std::vector<double>> slab_objectives;   ///< each of length p
  std::vector<std::vector<double>> sheet_violations;  ///< each of length q
  std::vector<char> slab_alive;
  std::vector<char> sheet_alive;

  static McReferenceSet sample(const pareto::ExtendedBox& box,
                               bool feasible_exists, std::size_t m, Rng& rng);

  /// Marks references that are already psi-dominated by an observation.
  void filter(std::span<const pareto::OutcomePoint> observations);

  std::size_t alive_count() const;
};

/// Monte-Carlo estimate of the extended expected improvement from the
/// posterior marginals at one candidate (objectives first, then
/// constraints). Optionally reports the Monte-Carlo standard error.
double expected_improvement(const McReferenceSet& refs,
                            std::span<const double> means,
                            std::span<const double> sds,
                            std::size_t num_objectives,
                            double* standard_error = nullptr);

/// Bundles the per-iteration surrogate state: one GP per output
/// (objectives first), the reference set and the observability model.
class Criterion {
 public:
  Criterion(const std::vector<gp::GPModel>* models, std::size_t num_objectives,
            McReferenceSet refs, ObservabilityModel observability)
      : models_(models),
        p_(num_objectives),
        refs_(std::move(refs)),
        observability_(std::move(observability)) {}

  double expected_improvement_at(std::span<const double> x_norm) const;
  double p_observable(std::span<const double> x_norm) const {
    return observability_.p_observable(x_norm);
  }
  /// expected_improvement_at(x) * p_observable(x).
  double weighted(std::span<const double> x_norm) const;

  const McReferenceSet& refs() const { return refs_; }

 private:
  const std::vector<gp::GPModel>* models_;
  std::size_t p_;
  McReferenceSet refs_;
  ObservabilityModel observability_;
};

}  // namespace bmoo::acq
