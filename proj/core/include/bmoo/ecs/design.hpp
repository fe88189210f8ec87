#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

namespace bmoo::ecs {

inline constexpr std::size_t kNumDesignVariables = 18;

/// The 18 geometric and flow design variables.
struct DesignVector {
  double mdot = 0.0;    ///< bleed mass flowrate [kg/s]
  double mdot_r = 0.0;  ///< ram mass flowrate [kg/s]
  double r3 = 0.0;      ///< compressor outlet radius [m]
  double r4 = 0.0;      ///< turbine inlet radius [m]
  double r2p = 0.0;     ///< compressor inlet foot radius [m]
  double r2t = 0.0;     ///< compressor inlet tip radius [m]
  double r5p = 0.0;     ///< turbine outlet foot radius [m]
  double r5t = 0.0;     ///< turbine outlet tip radius [m]
  double b3 = 0.0;      ///< compressor outlet blade height [m]
  double b4 = 0.0;      ///< turbine inlet blade height [m]
  double beta3 = 0.0;   ///< compressor outlet angle [rad]
  double alpha4 = 0.0;  ///< turbine inlet angle [rad]
  double Lx1 = 0.0, Ly1 = 0.0, Lz1 = 0.0;  ///< exchanger 1 box [m]
  double Lx2 = 0.0, Ly2 = 0.0, Lz2 = 0.0;  ///< exchanger 2 box [m]

  std::array<double, kNumDesignVariables> to_array() const;
  static DesignVector from_array(std::span<const double> values);
};

struct VariableBounds {
  std::array<double, kNumDesignVariables> lower;
  std::array<double, kNumDesignVariables> upper;
};

/// The containing hypercube of the design domain.
const VariableBounds& design_bounds();

/// Field names, in the same order as to_array().
const std::array<std::string, kNumDesignVariables>& design_variable_names();

bool within_bounds(const DesignVector& x, double tol = 0.0);

/// Maps to the unit hypercube defined by design_bounds().
std::array<double, kNumDesignVariables> normalize(const DesignVector& x);
DesignVector denormalize(std::span<const double> unit);

}  // namespace bmoo::ecs
