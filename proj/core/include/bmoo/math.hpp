#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace bmoo {

inline constexpr double kSqrt2 = 1.4142135623730951;

/// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

/// Standard normal density.
inline double normal_pdf(double z) {
  static constexpr double inv_sqrt_2pi = 0.3989422804014327;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

/// CDF of a Gaussian threshold event P(Y <= z) with Y ~ N(mean, sd^2).
/// Degenerate posteriors (sd ~ 0) collapse to an indicator.
inline double gaussian_below(double z, double mean, double sd) {
  if (sd <= 1e-300) return z >= mean ? 1.0 : 0.0;
  return normal_cdf((z - mean) / sd);
}

/// Linear-interpolation percentile (q in [0,1]) of an unsorted sample.
inline double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * values[lo] + w * values[hi];
}

inline double sq(double x) { return x * x; }

}  // namespace bmoo
