#pragma once

#include <array>

namespace waveguide::fem {

// Symmetric 6-point rule of degree 4 on the reference triangle; weights sum
// to 1 and are scaled by the element area.
struct TriangleRule {
  static constexpr int size = 6;
  static constexpr double a1 = 0.445948490915965;
  static constexpr double w1 = 0.223381589678011;
  static constexpr double a2 = 0.091576213509771;
  static constexpr double w2 = 0.109951743655322;
  // Barycentric coordinates (l1, l2); l0 = 1 - l1 - l2.
  static constexpr std::array<std::array<double, 2>, 6> points = {{
      {a1, a1},
      {1.0 - 2.0 * a1, a1},
      {a1, 1.0 - 2.0 * a1},
      {a2, a2},
      {1.0 - 2.0 * a2, a2},
      {a2, 1.0 - 2.0 * a2},
  }};
  static constexpr std::array<double, 6> weights = {w1, w1, w1, w2, w2, w2};
};

// P2 shape functions in barycentric coordinates, node order v0 v1 v2 m01 m12 m20.
inline std::array<double, 6> shape(double l0, double l1, double l2) {
  return {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
          4.0 * l0 * l1,         4.0 * l1 * l2,         4.0 * l2 * l0};
}

// Derivatives with respect to (l0, l1, l2) for each shape function.
inline std::array<std::array<double, 3>, 6> shape_dl(double l0, double l1, double l2) {
  return {{
      {4.0 * l0 - 1.0, 0.0, 0.0},
      {0.0, 4.0 * l1 - 1.0, 0.0},
      {0.0, 0.0, 4.0 * l2 - 1.0},
      {4.0 * l1, 4.0 * l0, 0.0},
      {0.0, 4.0 * l2, 4.0 * l1},
      {4.0 * l2, 0.0, 4.0 * l0},
  }};
}

// Affine map data of a triangle: gradients of the barycentric coordinates.
struct Affine {
  double area = 0.0;
  double gx[3] = {0, 0, 0};
  double gy[3] = {0, 0, 0};

  Affine(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    area = 0.5 * det;
    gx[0] = (y1 - y2) / det;
    gy[0] = (x2 - x1) / det;
    gx[1] = (y2 - y0) / det;
    gy[1] = (x0 - x2) / det;
    gx[2] = (y0 - y1) / det;
    gy[2] = (x1 - x0) / det;
  }
};

}  // namespace waveguide::fem
