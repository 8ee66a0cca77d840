#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "vrp/model.hpp"

namespace vrp {

namespace detail {

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace detail

inline const std::vector<std::string>& route_palette() {
  static const std::vector<std::string> colors = {
      "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
      "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  return colors;
}

// Renders a solution as a standalone SVG: one polyline per route, depot
// as a square, customers as labeled circles. Output is deterministic
// byte-for-byte: fixed 2-decimal coordinates, fixed palette order.
inline std::string emit_svg(const Solution& sol, const Instance& inst,
                            const DistanceMatrix& matrix) {
  auto violations = check_solution_feasibility(sol, inst, matrix);
  if (!violations.empty()) {
    std::string msg = "refusing to plot infeasible solution:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }

  const double view = 1000.0, margin = 50.0;
  double xmin = inst.depot.x, xmax = inst.depot.x;
  double ymin = inst.depot.y, ymax = inst.depot.y;
  for (const Node& c : inst.customers) {
    xmin = std::min(xmin, c.x);
    xmax = std::max(xmax, c.x);
    ymin = std::min(ymin, c.y);
    ymax = std::max(ymax, c.y);
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  double scale = span > 0.0 ? (view - 2 * margin) / span : 1.0;
  // Center the drawing; SVG y grows downward.
  double xoff = margin + ((view - 2 * margin) - (xmax - xmin) * scale) / 2.0;
  double yoff = margin + ((view - 2 * margin) - (ymax - ymin) * scale) / 2.0;
  auto px = [&](double x) { return xoff + (x - xmin) * scale; };
  auto py = [&](double y) { return view - (yoff + (y - ymin) * scale); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
  svg << "  <rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";

  const auto& palette = route_palette();
  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    svg << "  <polyline fill=\"none\" stroke=\"" << palette[r % palette.size()]
        << "\" stroke-width=\"2\" points=\"";
    svg << detail::fixed2(px(inst.depot.x)) << "," << detail::fixed2(py(inst.depot.y));
    for (int id : sol.routes[r].customer_ids) {
      const Node* n = inst.find(id);
      svg << " " << detail::fixed2(px(n->x)) << "," << detail::fixed2(py(n->y));
    }
    svg << " " << detail::fixed2(px(inst.depot.x)) << ","
        << detail::fixed2(py(inst.depot.y)) << "\"/>\n";
  }

  for (const Node& c : inst.customers) {
    svg << "  <circle cx=\"" << detail::fixed2(px(c.x)) << "\" cy=\""
        << detail::fixed2(py(c.y)) << "\" r=\"6\" fill=\"#333333\"/>\n";
    svg << "  <text x=\"" << detail::fixed2(px(c.x) + 8) << "\" y=\""
        << detail::fixed2(py(c.y) - 8) << "\" font-size=\"14\" fill=\"#333333\">"
        << c.id << " (" << detail::compact(c.demand) << ")</text>\n";
  }
  svg << "  <rect x=\"" << detail::fixed2(px(inst.depot.x) - 8) << "\" y=\""
      << detail::fixed2(py(inst.depot.y) - 8)
      << "\" width=\"16\" height=\"16\" fill=\"#000000\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace vrp
