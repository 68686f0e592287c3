#pragma once

// Self-contained SVG 1.1 convergence plots: linear iteration axis, log10
// value axis, one polyline per series, inline legend. Output is a pure
// function of the input (fixed palette, fixed layout, deterministic number
// formatting), which makes the plots golden-file testable.

#include <string>
#include <utility>
#include <vector>

namespace sfgm {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (iteration, value)
};

struct PlotOptions {
  int width = 960;
  int height = 600;
  std::string title;
  std::string x_label = "iteration k";
  std::string y_label;
};

// Values <= 0 cannot be drawn on a log axis and are skipped. Throws Error
// when no series contributes any drawable point. A series reduced to a
// single visible point is rendered as a circular marker.
std::string emit_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace sfgm
