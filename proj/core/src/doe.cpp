#include "bmoo/doe.hpp"

#include <cmath>
#include <limits>

#include "bmoo/ecs/model.hpp"
#include "bmoo/math.hpp"
#include "bmoo/rng.hpp"

namespace bmoo::doe {

namespace {

double distance_sq(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d += sq(a[k] - b[k]);
  return d;
}

}  // namespace

smc::Domain make_design_domain(const ecs::FixedParameters& params) {
  smc::Domain domain;
  domain.dim = ecs::kNumDesignVariables;
  domain.inside = [params](std::span<const double> unit) {
    return ecs::check_domain(ecs::denormalize(unit), params).ok;
  };
  return domain;
}

std::vector<std::vector<double>> prune_to_size(
    std::vector<std::vector<double>> points, std::size_t target) {
  while (points.size() > target) {
    const std::size_t n = points.size();
    // Closest pair.
    std::size_t pi = 0, pj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = distance_sq(points[i], points[j]);
        if (d < best) {
          best = d;
          pi = i;
          pj = j;
        }
      }
    }
    // Drop the endpoint whose second-closest neighbour is nearer; ties
    // drop the higher index.
    auto second_distance = [&](std::size_t self, std::size_t partner) {
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < n; ++k) {
        if (k == self || k == partner) continue;
        d = std::min(d, distance_sq(points[self], points[k]));
      }
      return d;
    };
    const double di = second_distance(pi, pj);
    const double dj = second_distance(pj, pi);
    const std::size_t victim = di < dj ? pi : pj;
    points.erase(points.begin() + static_cast<long>(victim));
  }
  return points;
}

std::vector<std::vector<double>> maximin_points(const smc::Domain& domain,
                                                std::size_t n_init,
                                                std::size_t oversample,
                                                std::uint64_t seed) {
  std::size_t factor = oversample;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Rng rng = make_stream(seed, Stream::doe, static_cast<std::uint64_t>(attempt));
    std::vector<std::vector<double>> survivors;
    const std::size_t candidates = factor * n_init;
    for (std::size_t c = 0; c < candidates; ++c) {
      std::vector<double> x(domain.dim);
      for (double& v : x) v = rng.uniform();
      if (domain.contains(x)) survivors.push_back(std::move(x));
    }
    if (survivors.size() >= n_init) {
      return prune_to_size(std::move(survivors), n_init);
    }
    factor *= 2;
  }
  throw InsufficientSurvivors(
      "rejection sampling left fewer than n_init in-domain points after 3 retries");
}

std::vector<std::vector<double>> rejection_sample(const smc::Domain& domain,
                                                  std::size_t count,
                                                  std::uint64_t seed) {
  Rng rng = make_stream(seed, Stream::doe, 0xacceULL);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  const std::size_t max_draws = 4000 * count + 100000;
  std::size_t draws = 0;
  std::vector<double> x(domain.dim);
  while (out.size() < count) {
    if (++draws > max_draws) {
      throw InsufficientSurvivors("domain acceptance rate too low");
    }
    for (double& v : x) v = rng.uniform();
    if (domain.contains(x)) out.push_back(x);
  }
  return out;
}

std::vector<ecs::DesignVector> maximin_design(const DoeConfig& config,
                                              const ecs::FixedParameters& params) {
  const smc::Domain domain = make_design_domain(params);
  const auto unit_points =
      maximin_points(domain, config.n_init, config.oversample, config.seed);
  std::vector<ecs::DesignVector> designs;
  designs.reserve(unit_points.size());
  for (const auto& unit : unit_points) {
    designs.push_back(ecs::denormalize(unit));
  }
  return designs;
}

VolumeRatioEstimate estimate_domain_volume_ratio(
    std::size_t n_samples, std::uint64_t seed,
    const ecs::FixedParameters& params) {
  Rng rng = make_stream(seed, Stream::doe, 0xfeedULL);
  std::size_t inside = 0;
  std::vector<double> x(ecs::kNumDesignVariables);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (double& v : x) v = rng.uniform();
    if (ecs::check_domain(ecs::denormalize(x), params).ok) ++inside;
  }
  VolumeRatioEstimate estimate;
  estimate.samples = n_samples;
  estimate.ratio =
      static_cast<double>(inside) / static_cast<double>(n_samples);
  estimate.standard_error = std::sqrt(
      estimate.ratio * (1.0 - estimate.ratio) / static_cast<double>(n_samples));
  return estimate;
}

}  // namespace bmoo::doe
