#include "waveguide/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "waveguide/errors.hpp"

namespace waveguide::plot {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;     // data range
  double px0, px1, py0, py1;  // pixel box, py0 at the top

  double X(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
  double Y(double y) const { return py1 - (y - y0) / (y1 - y0) * (py1 - py0); }
};

void pad_range(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double c = std::isfinite(lo) ? lo : 0.0;
    lo = c - 1.0;
    hi = c + 1.0;
    return;
  }
  const double d = 0.05 * (hi - lo);
  lo -= d;
  hi += d;
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  std::vector<double> ticks;
  if (!(hi > lo) || target < 2) return ticks;
  const double raw = (hi - lo) / (target - 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return ticks;
}

std::string diverging_color(double t) {
  t = std::clamp(t, -1.0, 1.0);
  // blue (59,76,192) - white - red (180,4,38)
  double r, g, b;
  if (t < 0) {
    const double s = -t;
    r = 255 + s * (59 - 255);
    g = 255 + s * (76 - 255);
    b = 255 + s * (192 - 255);
  } else {
    r = 255 + t * (180 - 255);
    g = 255 + t * (4 - 255);
    b = 255 + t * (38 - 255);
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(r)),
                static_cast<int>(std::lround(g)), static_cast<int>(std::lround(b)));
  return buf;
}

Series circle(cplx center, double radius, const std::string& label, const std::string& color,
              int segments) {
  Series s;
  s.label = label;
  s.color = color;
  s.dashed = true;
  for (int i = 0; i <= segments; ++i) {
    const double t = 2.0 * std::numbers::pi * i / segments;
    s.x.push_back(center.real() + radius * std::cos(t));
    s.y.push_back(center.imag() + radius * std::sin(t));
  }
  return s;
}

std::string render(const LinePlot& plot) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw ValidationError("series x and y differ in length");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  pad_range(x0, x1);
  pad_range(y0, y1);

  Frame f{x0, x1, y0, y1, 70.0, plot.width - 20.0, 40.0, plot.height - 50.0};
  if (plot.equal_aspect) {
    const double sx = (f.px1 - f.px0) / (x1 - x0), sy = (f.py1 - f.py0) / (y1 - y0);
    if (sx > sy) {
      const double w = (x1 - x0) * sy;
      f.px0 += 0.5 * (f.px1 - f.px0 - w);
      f.px1 = f.px0 + w;
    } else {
      const double hgt = (y1 - y0) * sx;
      f.py0 += 0.5 * (f.py1 - f.py0 - hgt);
      f.py1 = f.py0 + hgt;
    }
  }

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\""
     << plot.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << plot.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(plot.title) << "</text>\n";
  os << "<rect x=\"" << num(f.px0) << "\" y=\"" << num(f.py0) << "\" width=\""
     << num(f.px1 - f.px0) << "\" height=\"" << num(f.py1 - f.py0)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : nice_ticks(x0, x1)) {
    os << "<line x1=\"" << num(f.X(t)) << "\" y1=\"" << num(f.py1) << "\" x2=\"" << num(f.X(t))
       << "\" y2=\"" << num(f.py1 + 5) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << num(f.X(t)) << "\" y=\"" << num(f.py1 + 18)
       << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t : nice_ticks(y0, y1)) {
    os << "<line x1=\"" << num(f.px0 - 5) << "\" y1=\"" << num(f.Y(t)) << "\" x2=\""
       << num(f.px0) << "\" y2=\"" << num(f.Y(t)) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << num(f.px0 - 8) << "\" y=\"" << num(f.Y(t) + 4)
       << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
  }
  os << "<text x=\"" << num(0.5 * (f.px0 + f.px1)) << "\" y=\"" << plot.height - 12
     << "\" text-anchor=\"middle\">" << escape(plot.xlabel) << "</text>\n";
  os << "<text x=\"16\" y=\"" << num(0.5 * (f.py0 + f.py1))
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << num(0.5 * (f.py0 + f.py1))
     << ")\">" << escape(plot.ylabel) << "</text>\n";

  int legend_row = 0;
  for (const auto& s : plot.series) {
    if (s.markers) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << "<circle cx=\"" << num(f.X(s.x[i])) << "\" cy=\"" << num(f.Y(s.y[i]))
           << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
      }
    } else {
      // Non-finite samples break the polyline.
      std::string pts;
      auto flush = [&] {
        if (pts.empty()) return;
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
           << (s.dashed ? " stroke-dasharray=\"5,4\"" : "") << " points=\"" << pts << "\"/>\n";
        pts.clear();
      };
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
          flush();
          continue;
        }
        pts += num(f.X(s.x[i])) + "," + num(f.Y(s.y[i])) + " ";
      }
      flush();
    }
    if (!s.label.empty()) {
      const double ly = f.py0 + 14 + 16 * legend_row++;
      os << "<line x1=\"" << num(f.px1 - 120) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
         << num(f.px1 - 100) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color
         << "\" stroke-width=\"2\"/>";
      os << "<text x=\"" << num(f.px1 - 95) << "\" y=\"" << num(ly) << "\">" << escape(s.label)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap(const GridSpec& grid, const std::vector<std::optional<double>>& values,
                    const std::string& title) {
  if (values.size() != static_cast<std::size_t>(grid.nx) * grid.ny)
    throw ValidationError("heatmap value count does not match the grid");
  double vmax = 0.0;
  for (const auto& v : values)
    if (v && std::isfinite(*v)) vmax = std::max(vmax, std::abs(*v));
  if (vmax == 0.0) vmax = 1.0;

  const double dx = grid.nx > 1 ? (grid.x1 - grid.x0) / (grid.nx - 1) : 1.0;
  const double dy = grid.ny > 1 ? (grid.y1 - grid.y0) / (grid.ny - 1) : 1.0;
  const double span_x = grid.x1 - grid.x0 + dx, span_y = grid.y1 - grid.y0 + dy;
  const double scale = std::min(900.0 / span_x, 600.0 / span_y);
  const int W = static_cast<int>(std::ceil(span_x * scale)) + 40;
  const int H = static_cast<int>(std::ceil(span_y * scale)) + 90;
  const double top = 40.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\" shape-rendering=\"crispEdges\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  const std::string cw = num(dx * scale + 0.5), ch = num(dy * scale + 0.5);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto& v = values[static_cast<std::size_t>(j) * grid.nx + i];
      if (!v || !std::isfinite(*v)) continue;
      const double px = 20.0 + i * dx * scale;
      const double py = top + (grid.ny - 1 - j) * dy * scale;
      os << "<rect x=\"" << num(px) << "\" y=\"" << num(py) << "\" width=\"" << cw
         << "\" height=\"" << ch << "\" fill=\"" << diverging_color(*v / vmax) << "\"/>\n";
    }
  // Colour bar.
  const double by = H - 36.0;
  for (int s = 0; s < 64; ++s) {
    const double t = -1.0 + 2.0 * (s + 0.5) / 64;
    os << "<rect x=\"" << num(20 + s * 3.0) << "\" y=\"" << num(by) << "\" width=\"3\" height=\"10\" fill=\""
       << diverging_color(t) << "\"/>";
  }
  os << "\n<text x=\"20\" y=\"" << num(by + 24) << "\">" << num(-vmax) << "</text>";
  os << "<text x=\"212\" y=\"" << num(by + 24) << "\" text-anchor=\"end\">" << num(vmax)
     << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace waveguide::plot
