#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bmoo/rng.hpp"

namespace bmoo::smc {

struct SmcConfig {
  std::size_t particles = 500;
  int mh_sweeps = 2;                ///< random-walk sweeps per step
  double target_acceptance = 0.30;
  double initial_scale = 0.1;       ///< per-dimension, in range units
  double scale_min = 1e-4;
  double scale_max = 0.5;
  double ess_fraction = 0.5;        ///< resample when ESS < fraction * N
};

/// Truncated design domain in normalized (unit box) coordinates.
struct Domain {
  std::size_t dim = 0;
  std::function<bool(std::span<const double>)> inside;  ///< restrictions

  bool contains(std::span<const double> x) const {
    for (const double v : x) {
      if (v < 0.0 || v > 1.0) return false;
    }
    return !inside || inside(x);
  }
};

/// Value of the (unnormalized) target density at a point, along with the
/// acquisition value the optimizer maximizes.
struct TargetValue {
  double density = 0.0;    ///< p_observable * (EI + floor), 0 outside domain
  double criterion = 0.0;  ///< p_observable * EI
};

using DensityFn = std::function<TargetValue(std::span<const double>)>;

/// Weighted particle population over the truncated domain, evolved by
/// reweighting, systematic resampling and Metropolis random-walk moves.
/// Every stochastic choice derives from (master_seed, iteration_key,
/// particle index), so trajectories are reproducible under any thread
/// count.
class Sampler {
 public:
  Sampler(Domain domain, SmcConfig config, std::uint64_t master_seed);

  /// Installs a fresh population (positions must lie in the domain) and
  /// evaluates the target there; weights become proportional to it.
  /// Returns false if every particle has zero density.
  bool initialize(std::vector<std::vector<double>> positions,
                  const DensityFn& target);

  /// One SMC iteration against the (possibly new) target: importance
  /// reweighting by the density ratio, systematic resampling below the
  /// ESS threshold, then MH sweeps with per-dimension scale adaptation.
  /// Returns false when all weights vanish (caller should reinitialize).
  bool step(const DensityFn& target, std::uint64_t iteration_key);

  /// Index of the particle maximizing the cached criterion value
  /// (ties resolve to the lowest index).
  std::size_t propose_index() const;

  const std::vector<std::vector<double>>& positions() const {
    return positions_;
  }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& densities() const { return density_; }
  const std::vector<double>& criteria() const { return criterion_; }
  const std::vector<double>& scales() const { return scales_; }
  double last_acceptance_rate() const { return last_acceptance_rate_; }
  std::size_t size() const { return positions_.size(); }

 private:
  void normalize_weights();
  void systematic_resample(Rng& rng);

  Domain domain_;
  SmcConfig config_;
  std::uint64_t master_seed_;
  std::vector<std::vector<double>> positions_;
  std::vector<double> weights_;
  std::vector<double> density_;
  std::vector<double> criterion_;
  std::vector<double> scales_;
  double last_acceptance_rate_ = 0.0;
};

}  // namespace bmoo::smc
