#include "bmoo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bmoo/math.hpp"

namespace bmoo::acq {

namespace {

/// Abramowitz-Stegun 26.2.17 polynomial CDF, |error| < 7.5e-8. The MC
/// estimator evaluates millions of these per iteration.
double fast_normal_cdf(double x) {
  const double ax = std::abs(x);
  const double t = 1.0 / (1.0 + 0.2316419 * ax);
  const double poly =
      t * (0.319381530 +
           t * (-0.356563782 +
                t * (1.781477937 + t * (-1.821255978 + t * 1.330274429))));
  const double tail = 0.3989422804014327 * std::exp(-0.5 * ax * ax) * poly;
  return x >= 0.0 ? 1.0 - tail : tail;
}

double threshold_probability(double z, double mean, double sd) {
  if (sd <= 1e-300) return z >= mean ? 1.0 : 0.0;
  return fast_normal_cdf((z - mean) / sd);
}

bool extended_dominates(std::span<const double> a, std::span<const double> b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

}  // namespace

ObservabilityModel ObservabilityModel::build(
    std::vector<std::vector<double>> inputs, std::vector<bool> observed,
    int k) {
  if (inputs.size() != observed.size()) {
    throw std::invalid_argument("observability: inputs/labels size mismatch");
  }
  ObservabilityModel model;
  model.inputs_ = std::move(inputs);
  model.observed_ = std::move(observed);
  model.k_ = k;
  return model;
}

double ObservabilityModel::p_observable(std::span<const double> x) const {
  if (inputs_.empty()) return 1.0;  // optimistic prior
  const std::size_t n = inputs_.size();
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_), n);
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      d2 += sq(x[j] - inputs_[i][j]);
    }
    dist[i] = {d2, i};
  }
  // Ties in distance break by insertion order (ascending index).
  std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k),
                    dist.end());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (observed_[dist[i].second]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

pareto::ExtendedBox refresh_box(std::span<const pareto::OutcomePoint> points,
                                std::size_t p, std::size_t q,
                                const BoxConfig& config) {
  pareto::ExtendedBox box;
  box.obj_lower.assign(p, 0.0);
  box.obj_upper.assign(p, 1.0);
  if (config.default_obj_lower.size() == p) box.obj_lower = config.default_obj_lower;
  if (config.default_obj_upper.size() == p) box.obj_upper = config.default_obj_upper;

  bool any_feasible = false;
  std::vector<double> lo(p, 0.0), hi(p, 0.0);
  for (const auto& point : points) {
    if (!point.feasible) continue;
    for (std::size_t j = 0; j < p; ++j) {
      if (!any_feasible) {
        lo[j] = point.objectives[j];
        hi[j] = point.objectives[j];
      } else {
        lo[j] = std::min(lo[j], point.objectives[j]);
        hi[j] = std::max(hi[j], point.objectives[j]);
      }
    }
    any_feasible = true;
  }
  if (any_feasible) {
    for (std::size_t j = 0; j < p; ++j) {
      const double span = hi[j] - lo[j];
      const double pad =
          config.objective_padding * span + 1e-3 * std::max(1.0, std::abs(hi[j]));
      box.obj_lower[j] = lo[j] - pad;
      box.obj_upper[j] = hi[j] + pad;
    }
  }

  box.constraint_upper.assign(q, config.constraint_floor);
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<double> violations;
    violations.reserve(points.size());
    for (const auto& point : points) {
      violations.push_back(std::max(point.constraints[i], 0.0));
    }
    if (!violations.empty()) {
      box.constraint_upper[i] =
          std::max(config.constraint_floor,
                   percentile(std::move(violations),
                              config.violation_percentile));
    }
  }
  return box;
}

McReferenceSet McReferenceSet::sample(const pareto::ExtendedBox& box,
                                      bool feasible_exists, std::size_t m,
                                      Rng& rng) {
  McReferenceSet refs;
  refs.box = box;
  refs.objective_block_active = feasible_exists;
  const std::size_t p = box.num_objectives();
  const std::size_t q = box.num_constraints();
  const std::size_t slab_count = feasible_exists ? m / 2 : 0;
  const std::size_t sheet_count = m - slab_count;
  refs.slab_objectives.reserve(slab_count);
  for (std::size_t i = 0; i < slab_count; ++i) {
    std::vector<double> z(p);
    for (std::size_t j = 0; j < p; ++j) {
      z[j] = rng.uniform(box.obj_lower[j], box.obj_upper[j]);
    }
    refs.slab_objectives.push_back(std::move(z));
  }
  refs.sheet_violations.reserve(sheet_count);
  for (std::size_t i = 0; i < sheet_count; ++i) {
    std::vector<double> z(q);
    for (std::size_t j = 0; j < q; ++j) {
      z[j] = rng.uniform(0.0, box.constraint_upper[j]);
    }
    refs.sheet_violations.push_back(std::move(z));
  }
  refs.slab_alive.assign(slab_count, 1);
  refs.sheet_alive.assign(sheet_count, 1);
  return refs;
}

void McReferenceSet::filter(std::span<const pareto::OutcomePoint> observations) {
  const std::size_t p = box.num_objectives();
  const std::size_t q = box.num_constraints();
  std::vector<std::vector<double>> images;
  images.reserve(observations.size());
  for (const auto& obs : observations) {
    images.push_back(pareto::psi_map(obs, box));
  }
  std::vector<double> extended(p + q);
  for (std::size_t r = 0; r < slab_objectives.size(); ++r) {
    std::copy(slab_objectives[r].begin(), slab_objectives[r].end(),
              extended.begin());
    std::fill(extended.begin() + static_cast<long>(p), extended.end(), 0.0);
    slab_alive[r] = 1;
    for (const auto& image : images) {
      if (extended_dominates(image, extended)) {
        slab_alive[r] = 0;
        break;
      }
    }
  }
  for (std::size_t r = 0; r < sheet_violations.size(); ++r) {
    std::copy(box.obj_upper.begin(), box.obj_upper.end(), extended.begin());
    std::copy(sheet_violations[r].begin(), sheet_violations[r].end(),
              extended.begin() + static_cast<long>(p));
    sheet_alive[r] = 1;
    for (const auto& image : images) {
      if (extended_dominates(image, extended)) {
        sheet_alive[r] = 0;
        break;
      }
    }
  }
}

std::size_t McReferenceSet::alive_count() const {
  const auto ones = [](const std::vector<char>& v) {
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
  };
  return ones(slab_alive) + ones(sheet_alive);
}

double expected_improvement(const McReferenceSet& refs,
                            std::span<const double> means,
                            std::span<const double> sds,
                            std::size_t p, double* standard_error) {
  const std::size_t q = refs.box.num_constraints();
  double total = 0.0;
  double variance = 0.0;

  if (!refs.sheet_violations.empty()) {
    const double vol = refs.box.constraint_volume();
    const double m = static_cast<double>(refs.sheet_violations.size());
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t r = 0; r < refs.sheet_violations.size(); ++r) {
      double prob = 0.0;
      if (refs.sheet_alive[r]) {
        prob = 1.0;
        const auto& z = refs.sheet_violations[r];
        for (std::size_t i = 0; i < q && prob > 0.0; ++i) {
          prob *= threshold_probability(z[i], means[p + i], sds[p + i]);
        }
      }
      sum += prob;
      sum_sq += prob * prob;
    }
    total += vol * sum / m;
    if (m > 1.0) {
      const double mean_c = sum / m;
      variance += vol * vol * std::max(0.0, sum_sq / m - mean_c * mean_c) / m;
    }
  }

  if (!refs.slab_objectives.empty()) {
    // The constraint factor is shared by every slab reference (their
    // violation block is identically zero).
    double shared = 1.0;
    for (std::size_t i = 0; i < q && shared > 0.0; ++i) {
      shared *= threshold_probability(0.0, means[p + i], sds[p + i]);
    }
    const double vol = refs.box.objective_volume();
    const double m = static_cast<double>(refs.slab_objectives.size());
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t r = 0; r < refs.slab_objectives.size(); ++r) {
      double prob = 0.0;
      if (refs.slab_alive[r] && shared > 0.0) {
        prob = shared;
        const auto& z = refs.slab_objectives[r];
        for (std::size_t j = 0; j < p && prob > 0.0; ++j) {
          prob *= threshold_probability(z[j], means[j], sds[j]);
        }
      }
      sum += prob;
      sum_sq += prob * prob;
    }
    total += vol * sum / m;
    if (m > 1.0) {
      const double mean_c = sum / m;
      variance += vol * vol * std::max(0.0, sum_sq / m - mean_c * mean_c) / m;
    }
  }

  if (standard_error != nullptr) *standard_error = std::sqrt(variance);
  return total;
}

double Criterion::expected_improvement_at(std::span<const double> x) const {
  const std::size_t outputs = models_->size();
  std::vector<double> means(outputs), sds(outputs);
  for (std::size_t i = 0; i < outputs; ++i) {
    const gp::Prediction pred = (*models_)[i].predict(x);
    means[i] = pred.mean;
    sds[i] = std::sqrt(std::max(0.0, pred.variance));
  }
  return expected_improvement(refs_, means, sds, p_, nullptr);
}

double Criterion::weighted(std::span<const double> x) const {
  const double p_obs = observability_.p_observable(x);
  if (p_obs <= 0.0) return 0.0;
  return expected_improvement_at(x) * p_obs;
}

}  // namespace bmoo::acq
