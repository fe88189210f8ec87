#pragma once

#include <array>

#include "bmoo/ecs/design.hpp"

namespace bmoo::ecs {

/// Built-in fixture: seven published trade-off designs for this problem,
/// keyed 1..7, with their reported mass and entropy-rate values. Used by
/// `bmoo_ecs eval --table2-point` and by the acceptance suite.
struct ReferenceDesign {
  int key = 0;
  DesignVector x;
  double reported_mass = 0.0;          ///< [kg]
  double reported_entropy_rate = 0.0;  ///< reported units; rank order only
};

const std::array<ReferenceDesign, 7>& reference_designs();

/// key in 1..7; throws std::out_of_range otherwise.
const ReferenceDesign& reference_design(int key);

}  // namespace bmoo::ecs
