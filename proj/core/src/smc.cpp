#include "bmoo/smc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bmoo/parallel.hpp"

namespace bmoo::smc {

Sampler::Sampler(Domain domain, SmcConfig config, std::uint64_t master_seed)
    : domain_(std::move(domain)),
      config_(config),
      master_seed_(master_seed),
      scales_(domain_.dim, config.initial_scale) {}

bool Sampler::initialize(std::vector<std::vector<double>> positions,
                         const DensityFn& target) {
  if (positions.empty()) {
    throw std::invalid_argument("smc: empty initial population");
  }
  positions_ = std::move(positions);
  const std::size_t n = positions_.size();
  density_.assign(n, 0.0);
  criterion_.assign(n, 0.0);
  weights_.assign(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const TargetValue v = target(positions_[i]);
    density_[i] = v.density;
    criterion_[i] = v.criterion;
  });
  // Uniform proposal over the domain, so weights follow the density.
  for (std::size_t i = 0; i < n; ++i) weights_[i] = density_[i];
  double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) return false;
  normalize_weights();
  return true;
}

void Sampler::normalize_weights() {
  const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (double& w : weights_) w /= sum;
}

void Sampler::systematic_resample(Rng& rng) {
  const std::size_t n = positions_.size();
  const double u0 = rng.uniform() / static_cast<double>(n);
  std::vector<std::size_t> ancestors(n);
  double cumulative = weights_[0];
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = u0 + static_cast<double>(i) / static_cast<double>(n);
    while (u > cumulative && j + 1 < n) {
      ++j;
      cumulative += weights_[j];
    }
    ancestors[i] = j;
  }
  std::vector<std::vector<double>> new_positions(n);
  std::vector<double> new_density(n), new_criterion(n);
  for (std::size_t i = 0; i < n; ++i) {
    new_positions[i] = positions_[ancestors[i]];
    new_density[i] = density_[ancestors[i]];
    new_criterion[i] = criterion_[ancestors[i]];
  }
  positions_ = std::move(new_positions);
  density_ = std::move(new_density);
  criterion_ = std::move(new_criterion);
  weights_.assign(n, 1.0 / static_cast<double>(n));
}

bool Sampler::step(const DensityFn& target, std::uint64_t iteration_key) {
  const std::size_t n = positions_.size();
  if (n == 0) throw std::logic_error("smc: step before initialize");
  const std::size_t d = domain_.dim;

  // Reweight by the density ratio between the new and stored targets.
  std::vector<double> new_density(n), new_criterion(n);
  parallel_for(n, [&](std::size_t i) {
    const TargetValue v = target(positions_[i]);
    new_density[i] = v.density;
    new_criterion[i] = v.criterion;
  });
  for (std::size_t i = 0; i < n; ++i) {
    weights_[i] = density_[i] > 0.0
                      ? weights_[i] * (new_density[i] / density_[i])
                      : 0.0;
    density_[i] = new_density[i];
    criterion_[i] = new_criterion[i];
  }
  double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(sum > 0.0) || !std::isfinite(sum)) return false;
  normalize_weights();

  double ess = 0.0;
  for (const double w : weights_) ess += w * w;
  ess = 1.0 / ess;
  if (ess < config_.ess_fraction * static_cast<double>(n)) {
    Rng resample_rng = make_stream(master_seed_, Stream::smc_init, iteration_key);
    systematic_resample(resample_rng);
  }

  // Metropolis random-walk sweeps; proposals leaving the truncated domain
  // are auto-rejected and count toward the adaptation statistics.
  std::vector<int> accepted(n, 0);
  for (int sweep = 0; sweep < config_.mh_sweeps; ++sweep) {
    parallel_for(n, [&](std::size_t i) {
      Rng rng = make_stream(master_seed_, Stream::smc_moves, iteration_key,
                            i * 97 + static_cast<std::uint64_t>(sweep));
      std::vector<double> proposal(d);
      for (std::size_t k = 0; k < d; ++k) {
        proposal[k] = positions_[i][k] + scales_[k] * rng.normal();
      }
      if (!domain_.contains(proposal)) return;
      const TargetValue v = target(proposal);
      bool accept = false;
      if (density_[i] <= 0.0) {
        accept = v.density > 0.0;
      } else {
        accept = rng.uniform() < v.density / density_[i];
      }
      if (accept) {
        positions_[i] = std::move(proposal);
        density_[i] = v.density;
        criterion_[i] = v.criterion;
        ++accepted[i];
      }
    });
  }
  const double rate =
      static_cast<double>(std::accumulate(accepted.begin(), accepted.end(), 0)) /
      (static_cast<double>(n) * static_cast<double>(config_.mh_sweeps));
  last_acceptance_rate_ = rate;
  const double factor = rate < config_.target_acceptance ? 0.9 : 1.1;
  for (double& s : scales_) {
    s = std::clamp(s * factor, config_.scale_min, config_.scale_max);
  }
  return true;
}

std::size_t Sampler::propose_index() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < criterion_.size(); ++i) {
    if (criterion_[i] > criterion_[best]) best = i;
  }
  return best;
}

}  // namespace bmoo::smc
