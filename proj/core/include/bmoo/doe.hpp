#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bmoo/ecs/design.hpp"
#include "bmoo/ecs/params.hpp"
#include "bmoo/smc.hpp"

namespace bmoo::doe {

struct DoeConfig {
  std::size_t n_init = 90;
  std::size_t oversample = 50;  ///< candidates = oversample * n_init
  std::uint64_t seed = 0;
};

class InsufficientSurvivors : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pseudo-maximin design on a truncated domain (normalized coordinates):
/// uniform rejection sampling on the unit box followed by greedy pruning
/// of the closest pair (dropping the endpoint whose second-closest
/// neighbour is nearer) until n_init points remain. Doubles the
/// oversampling and retries (3x) when rejection leaves too few survivors.
std::vector<std::vector<double>> maximin_points(const smc::Domain& domain,
                                                std::size_t n_init,
                                                std::size_t oversample,
                                                std::uint64_t seed);

/// Greedy pruning used above, exposed for its distance properties.
std::vector<std::vector<double>> prune_to_size(
    std::vector<std::vector<double>> points, std::size_t target);

/// Plain uniform rejection sampling on the truncated domain (no pruning);
/// used to (re)seed particle populations. Throws InsufficientSurvivors if
/// the acceptance rate collapses.
std::vector<std::vector<double>> rejection_sample(const smc::Domain& domain,
                                                  std::size_t count,
                                                  std::uint64_t seed);

/// The design problem instance: rejection sampling against d1..d9.
std::vector<ecs::DesignVector> maximin_design(const DoeConfig& config,
                                              const ecs::FixedParameters& params);

struct VolumeRatioEstimate {
  double ratio = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Monte-Carlo fraction of the containing hypercube satisfying d1..d9.
VolumeRatioEstimate estimate_domain_volume_ratio(
    std::size_t n_samples, std::uint64_t seed,
    const ecs::FixedParameters& params);

/// Normalized-coordinate domain for the design problem (d1..d9).
smc::Domain make_design_domain(const ecs::FixedParameters& params);

}  // namespace bmoo::doe
