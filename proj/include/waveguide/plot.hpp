#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waveguide/solver.hpp"

namespace waveguide::plot {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;  // dots instead of a polyline
};

struct LinePlot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<Series> series;
  bool equal_aspect = false;
  int width = 640;
  int height = 480;
};

std::string render(const LinePlot& plot);

// Closed polyline approximating the circle.
Series circle(cplx center, double radius, const std::string& label, const std::string& color,
              int segments = 256);

// Rect-per-sample heatmap; missing samples are left blank. The colour map
// is blue-white-red, symmetric about zero.
std::string heatmap(const GridSpec& grid, const std::vector<std::optional<double>>& values,
                    const std::string& title);

// Fixed diverging map for t in [-1, 1], as "#rrggbb".
std::string diverging_color(double t);

// About `target` round numbers covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace waveguide::plot
