#pragma once

#include <string>
#include <vector>

namespace waveguide {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Even staircase waveguide {0 < y < g(x)} with g(x) = heights[j] on
/// [j*ell, (j+1)*ell) for x >= 0, ell = pi/k. heights[0] is the branch
/// height L and the last entry is the unit tail that extends to infinity.
class WaveguideGeometry {
 public:
  WaveguideGeometry() = default;

  double k() const { return k_; }
  double ell() const;
  double branch_height() const { return heights_.front(); }
  const std::vector<double>& heights() const { return heights_; }
  std::vector<double> tail_heights() const;
  int step_count() const { return static_cast<int>(heights_.size()); }

  // Profile g(x); even in x.
  double profile(double x) const;
  // Abscissa j*ell of the j-th breakpoint (x >= 0 side).
  double breakpoint(int j) const;
  // Start of the uniform unit-height tail, (steps - 1) * ell.
  double tail_start() const { return breakpoint(step_count() - 1); }
  // Largest height outside the branch column.
  double max_tail_height() const;

  std::string id() const;

  friend WaveguideGeometry build_omega(double k, double L);
  friend WaveguideGeometry build_staircase(double k, double L,
                                           const std::vector<double>& tail,
                                           bool allow_nonmonotone);

 private:
  double k_ = 0.0;
  std::vector<double> heights_;
};

// The single-branch guide: R x (0,1) joined with (-ell, ell) x [1, L).
WaveguideGeometry build_omega(double k, double L);

// Branch of height L on |x| < ell followed by one step of width ell per
// tail height. Tail heights must be nonincreasing, >= 1 and end at 1 unless
// allow_nonmonotone is set (then only >= 1 and ending at 1 are enforced).
WaveguideGeometry build_staircase(double k, double L,
                                  const std::vector<double>& tail,
                                  bool allow_nonmonotone = false);

enum class SymmetryBc { NeumannOnSigma, DirichletOnSigma };

// Restriction of the guide to x < 0 with a condition on the cut
// Sigma = {0} x (0, heights[0]).
struct HalfGuideProblem {
  WaveguideGeometry geometry;
  SymmetryBc bc = SymmetryBc::NeumannOnSigma;

  double sigma_height() const { return geometry.branch_height(); }
};

HalfGuideProblem half_guide(const WaveguideGeometry& geom, SymmetryBc bc);

// Half guide whose branch column (-ell, 0) extends to y = +infinity. The
// branch height of `base` is ignored.
struct LimitGeometry {
  WaveguideGeometry base;

  double branch_width() const { return base.ell(); }
};

LimitGeometry limit_geometry(const WaveguideGeometry& geom);

enum class PortOrientation { Left, Right, Top };
enum class PortParity { FullInterval, HalfGuide };

struct Port {
  int id = 0;
  PortOrientation orientation = PortOrientation::Left;
  double position = 0.0;  // x for Left/Right ports, y for Top ports
  double span_lo = 0.0;   // cross-section interval (in y, or in x for Top)
  double span_hi = 1.0;
  PortParity parity = PortParity::FullInterval;

  double width() const { return span_hi - span_lo; }
  bool horizontal_guide() const { return orientation != PortOrientation::Top; }
};

enum class SegmentKind { Wall, Port, Symmetry };

struct Segment {
  Point a;
  Point b;
  SegmentKind kind = SegmentKind::Wall;
  int port_id = -1;

  bool vertical() const { return a.x == b.x; }
};

enum class SymmetryLine { None, Neumann, Dirichlet };

struct Column {
  double x0 = 0.0;
  double x1 = 0.0;
  double height = 0.0;
};

// Bounded computational domain: a left-to-right list of columns
// [x0, x1] x (0, height) plus ports and an optional symmetry line at x = 0.
struct TruncatedDomain {
  double k = 0.0;
  std::vector<Column> columns;
  std::vector<Port> ports;
  SymmetryLine symmetry = SymmetryLine::None;

  double ell() const;
  double x_min() const { return columns.front().x0; }
  double x_max() const { return columns.back().x1; }
  double area() const;
  // Closed counterclockwise boundary polygon with tagged segments.
  std::vector<Segment> boundary() const;
  const Port& port(int id) const;
};

struct Margins {
  double left = 0.0;  // distance from the last breakpoint to the side ports
  double top = 0.0;   // distance from the tallest tail step to the top port
};

// Side ports at distance ell beyond the last step, top port 2*ell above
// the tallest tail step.
Margins default_margins(const WaveguideGeometry& geom, double factor = 1.0);

// Port ids used by the truncations below.
inline constexpr int kLeftPort = 0;
inline constexpr int kRightPort = 1;
inline constexpr int kTopPort = 2;

TruncatedDomain truncate(const WaveguideGeometry& geom, const Margins& m);
TruncatedDomain truncate(const HalfGuideProblem& problem, const Margins& m);
TruncatedDomain truncate(const LimitGeometry& limit, SymmetryBc bc,
                         const Margins& m);

// True when sqrt(2/k) cos(kx) has zero normal derivative on the segment.
bool cos_compatible(const Segment& s, double k);

}  // namespace waveguide
