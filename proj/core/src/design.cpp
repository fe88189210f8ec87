#include "bmoo/ecs/design.hpp"

#include <cassert>
#include <numbers>

namespace bmoo::ecs {

namespace {
constexpr double kPi3 = std::numbers::pi / 3.0;
}

std::array<double, kNumDesignVariables> DesignVector::to_array() const {
  return {mdot, mdot_r, r3,  r4,  r2p, r2t, r5p, r5t, b3,
          b4,   beta3,  alpha4, Lx1, Ly1, Lz1, Lx2, Ly2, Lz2};
}

DesignVector DesignVector::from_array(std::span<const double> v) {
  assert(v.size() == kNumDesignVariables);
  DesignVector x;
  x.mdot = v[0];
  x.mdot_r = v[1];
  x.r3 = v[2];
  x.r4 = v[3];
  x.r2p = v[4];
  x.r2t = v[5];
  x.r5p = v[6];
  x.r5t = v[7];
  x.b3 = v[8];
  x.b4 = v[9];
  x.beta3 = v[10];
  x.alpha4 = v[11];
  x.Lx1 = v[12];
  x.Ly1 = v[13];
  x.Lz1 = v[14];
  x.Lx2 = v[15];
  x.Ly2 = v[16];
  x.Lz2 = v[17];
  return x;
}

const VariableBounds& design_bounds() {
  static const VariableBounds bounds = {
      // mdot mdot_r r3   r4   r2p   r2t   r5p   r5t   b3    b4    beta3 alpha4
      {2.0, 2.0, 0.1, 0.1, 0.03, 0.04, 0.03, 0.04, 0.01, 0.01, -kPi3, 0.0,
       // Lx1 Ly1 Lz1 Lx2 Ly2 Lz2
       0.025, 0.025, 0.025, 0.025, 0.025, 0.025},
      {8.0, 8.0, 0.3, 0.3, 0.1, 0.2, 0.1, 0.2, 0.1, 0.1, kPi3, kPi3,
       0.7, 0.7, 0.7, 0.7, 0.7, 0.7},
  };
  return bounds;
}

const std::array<std::string, kNumDesignVariables>& design_variable_names() {
  static const std::array<std::string, kNumDesignVariables> names = {
      "mdot", "mdot_r", "r3",  "r4",  "r2p", "r2t", "r5p", "r5t", "b3",
      "b4",   "beta3",  "alpha4", "Lx1", "Ly1", "Lz1", "Lx2", "Ly2", "Lz2"};
  return names;
}

bool within_bounds(const DesignVector& x, double tol) {
  const auto arr = x.to_array();
  const auto& b = design_bounds();
  for (std::size_t i = 0; i < kNumDesignVariables; ++i) {
    if (arr[i] < b.lower[i] - tol || arr[i] > b.upper[i] + tol) return false;
  }
  return true;
}

std::array<double, kNumDesignVariables> normalize(const DesignVector& x) {
  const auto arr = x.to_array();
  const auto& b = design_bounds();
  std::array<double, kNumDesignVariables> unit{};
  for (std::size_t i = 0; i < kNumDesignVariables; ++i) {
    unit[i] = (arr[i] - b.lower[i]) / (b.upper[i] - b.lower[i]);
  }
  return unit;
}

DesignVector denormalize(std::span<const double> unit) {
  assert(unit.size() == kNumDesignVariables);
  const auto& b = design_bounds();
  std::array<double, kNumDesignVariables> arr{};
  for (std::size_t i = 0; i < kNumDesignVariables; ++i) {
    arr[i] = b.lower[i] + unit[i] * (b.upper[i] - b.lower[i]);
  }
  return DesignVector::from_array(arr);
}

}  // namespace bmoo::ecs
