#include "bmoo/plot.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace bmoo::plot {

namespace {

struct Axis {
  double lo = 0.0, hi = 1.0;
  double to_pixel(double v, double px_lo, double px_hi) const {
    const double t = (v - lo) / (hi - lo);
    return px_lo + t * (px_hi - px_lo);
  }
};

Axis make_axis(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(1.0, std::abs(lo)) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string trim_number(double v) {
  std::ostringstream os;
  os.precision(5);
  os << v;
  return os.str();
}

}  // namespace

std::string pareto_scatter_svg(const loop::OptimizationResult& result,
                               const Problem& problem) {
  constexpr double kWidth = 720, kHeight = 540;
  constexpr double kLeft = 80, kRight = 690, kTop = 40, kBottom = 480;

  const auto names = problem.objective_names();
  std::set<std::size_t> pareto(result.pareto_indices.begin(),
                               result.pareto_indices.end());

  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  bool first = true;
  for (const auto& r : result.log.records) {
    if (!r.success) continue;
    if (first) {
      x_lo = x_hi = r.objectives[0];
      y_lo = y_hi = r.objectives[1];
      first = false;
    } else {
      x_lo = std::min(x_lo, r.objectives[0]);
      x_hi = std::max(x_hi, r.objectives[0]);
      y_lo = std::min(y_lo, r.objectives[1]);
      y_hi = std::max(y_hi, r.objectives[1]);
    }
  }
  const Axis ax = make_axis(x_lo, x_hi);
  const Axis ay = make_axis(y_lo, y_hi);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<style>\n"
         ".infeasible { fill: none; stroke: #444444; stroke-width: 1.2; }\n"
         ".dominated { fill: #9e9e9e; stroke: none; }\n"
         ".pareto { fill: #000000; stroke: none; }\n"
         "text { font-family: sans-serif; font-size: 13px; fill: #222; }\n"
         "</style>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" fill=\"white\"/>\n";

  // Frame and ticks.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
      << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = ax.lo + (ax.hi - ax.lo) * t / 5.0;
    const double px = ax.to_pixel(fx, kLeft, kRight);
    svg << "<line x1=\"" << px << "\" y1=\"" << kBottom << "\" x2=\"" << px
        << "\" y2=\"" << kBottom + 6 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px << "\" y=\"" << kBottom + 22
        << "\" text-anchor=\"middle\">" << trim_number(fx) << "</text>\n";
    const double fy = ay.lo + (ay.hi - ay.lo) * t / 5.0;
    const double py = ay.to_pixel(fy, kBottom, kTop);
    svg << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << py << "\" x2=\"" << kLeft
        << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 10 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\">" << trim_number(fy) << "</text>\n";
  }
  svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 45
      << "\" text-anchor=\"middle\">" << names[0] << "</text>\n";
  svg << "<text x=\"22\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 22 "
      << (kTop + kBottom) / 2 << ")\">" << names[1] << "</text>\n";

  // Legend, mirroring the three point classes.
  svg << "<circle class=\"legend-infeasible infeasible\" cx=\"" << kRight - 180
      << "\" cy=\"" << kTop + 8 << "\" r=\"4\"/>"
      << "<text x=\"" << kRight - 170 << "\" y=\"" << kTop + 12
      << "\">infeasible</text>\n";
  svg << "<circle class=\"legend-dominated dominated\" cx=\"" << kRight - 180
      << "\" cy=\"" << kTop + 28 << "\" r=\"4\"/>"
      << "<text x=\"" << kRight - 170 << "\" y=\"" << kTop + 32
      << "\">feasible, dominated</text>\n";
  svg << "<circle class=\"legend-pareto pareto\" cx=\"" << kRight - 180
      << "\" cy=\"" << kTop + 48 << "\" r=\"4\"/>"
      << "<text x=\"" << kRight - 170 << "\" y=\"" << kTop + 52
      << "\">Pareto-optimal</text>\n";

  for (std::size_t i = 0; i < result.log.records.size(); ++i) {
    const auto& r = result.log.records[i];
    if (!r.success) continue;
    const char* cls = "infeasible";
    if (r.feasible()) cls = pareto.count(i) > 0 ? "pareto" : "dominated";
    svg << "<circle class=\"" << cls << "\" cx=\""
        << ax.to_pixel(r.objectives[0], kLeft, kRight) << "\" cy=\""
        << ay.to_pixel(r.objectives[1], kBottom, kTop) << "\" r=\"4\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace bmoo::plot
