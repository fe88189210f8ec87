#pragma once

#include <string>

#include "bmoo/loop.hpp"

namespace bmoo::plot {

/// Scatter of the two objectives over all successful evaluations:
/// open circles for infeasible points, grey disks for feasible dominated
/// points, black disks for the Pareto-optimal subset. Axes carry the
/// objective names. Returns the SVG document.
std::string pareto_scatter_svg(const loop::OptimizationResult& result,
                               const Problem& problem);

}  // namespace bmoo::plot
