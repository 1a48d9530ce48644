#include "waveguide/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "waveguide/errors.hpp"

namespace waveguide {

namespace {

void check_wavenumber(double k) {
  if (!(k > 0.0 && k < std::numbers::pi)) {
    std::ostringstream os;
    os << "wavenumber k=" << k
       << " outside (0, pi): need exactly one propagating mode";
    throw ValidationError(os.str());
  }
}

void check_branch(double L) {
  if (!(L > 1.0) || !std::isfinite(L)) {
    std::ostringstream os;
    os << "branch height L=" << L << " must be > 1";
    throw ValidationError(os.str());
  }
}

}  // namespace

double WaveguideGeometry::ell() const { return std::numbers::pi / k_; }

std::vector<double> WaveguideGeometry::tail_heights() const {
  return {heights_.begin() + 1, heights_.end()};
}

double WaveguideGeometry::profile(double x) const {
  const double ax = std::abs(x);
  const auto j = static_cast<std::size_t>(std::floor(ax / ell()));
  return heights_[std::min(j, heights_.size() - 1)];
}

double WaveguideGeometry::breakpoint(int j) const { return j * ell(); }

double WaveguideGeometry::max_tail_height() const {
  return *std::max_element(heights_.begin() + 1, heights_.end());
}

std::string WaveguideGeometry::id() const {
  std::ostringstream os;
  os.precision(12);
  os << (heights_.size() == 2 ? "omega" : "staircase") << "(k=" << k_
     << ",L=" << heights_.front();
  if (heights_.size() > 2) {
    os << ",tail=[";
    for (std::size_t i = 1; i < heights_.size(); ++i)
      os << (i > 1 ? "," : "") << heights_[i];
    os << "]";
  }
  os << ")";
  return os.str();
}

WaveguideGeometry build_omega(double k, double L) {
  check_wavenumber(k);
  check_branch(L);
  WaveguideGeometry g;
  g.k_ = k;
  g.heights_ = {L, 1.0};
  return g;
}

WaveguideGeometry build_staircase(double k, double L,
                                  const std::vector<double>& tail,
                                  bool allow_nonmonotone) {
  check_wavenumber(k);
  check_branch(L);
  if (tail.empty()) throw ValidationError("staircase needs at least one tail height");
  if (tail.back() != 1.0)
    throw ValidationError("staircase tail must end at height 1");
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (!(tail[i] >= 1.0) || !std::isfinite(tail[i])) {
      std::ostringstream os;
      os << "tail height #" << i << " = " << tail[i] << " is below 1";
      throw ValidationError(os.str());
    }
    if (!allow_nonmonotone && i > 0 && tail[i] > tail[i - 1]) {
      std::ostringstream os;
      os << "tail heights must be nonincreasing (#" << i << " = " << tail[i]
         << " > " << tail[i - 1] << "); pass allow_nonmonotone to override";
      throw ValidationError(os.str());
    }
  }
  WaveguideGeometry g;
  g.k_ = k;
  g.heights_.reserve(tail.size() + 1);
  g.heights_.push_back(L);
  g.heights_.insert(g.heights_.end(), tail.begin(), tail.end());
  return g;
}

HalfGuideProblem half_guide(const WaveguideGeometry& geom, SymmetryBc bc) {
  return HalfGuideProblem{geom, bc};
}

LimitGeometry limit_geometry(const WaveguideGeometry& geom) {
  return LimitGeometry{geom};
}

double TruncatedDomain::ell() const { return std::numbers::pi / k; }

double TruncatedDomain::area() const {
  double a = 0.0;
  for (const auto& c : columns) a += (c.x1 - c.x0) * c.height;
  return a;
}

const Port& TruncatedDomain::port(int id) const {
  for (const auto& p : ports)
    if (p.id == id) return p;
  throw ValidationError("no port with id " + std::to_string(id));
}

std::vector<Segment> TruncatedDomain::boundary() const {
  auto find_port = [&](PortOrientation o) -> const Port* {
    for (const auto& p : ports)
      if (p.orientation == o) return &p;
    return nullptr;
  };
  const Port* left = find_port(PortOrientation::Left);
  const Port* right = find_port(PortOrientation::Right);
  const Port* top = find_port(PortOrientation::Top);

  std::vector<Segment> segs;
  for (const auto& c : columns)
    segs.push_back({{c.x0, 0.0}, {c.x1, 0.0}, SegmentKind::Wall, -1});

  const Column& last = columns.back();
  Segment rs{{last.x1, 0.0}, {last.x1, last.height}, SegmentKind::Wall, -1};
  if (right) {
    rs.kind = SegmentKind::Port;
    rs.port_id = right->id;
  } else if (symmetry != SymmetryLine::None) {
    rs.kind = SegmentKind::Symmetry;
  }
  segs.push_back(rs);

  for (std::size_t i = columns.size(); i-- > 0;) {
    const Column& c = columns[i];
    Segment ts{{c.x1, c.height}, {c.x0, c.height}, SegmentKind::Wall, -1};
    if (top && top->position == c.height && top->span_lo <= c.x0 &&
        top->span_hi >= c.x1) {
      ts.kind = SegmentKind::Port;
      ts.port_id = top->id;
    }
    segs.push_back(ts);
    if (i > 0 && columns[i - 1].height != c.height)
      segs.push_back({{c.x0, c.height}, {c.x0, columns[i - 1].height},
                      SegmentKind::Wall, -1});
  }

  const Column& first = columns.front();
  Segment ls{{first.x0, first.height}, {first.x0, 0.0}, SegmentKind::Wall, -1};
  if (left) {
    ls.kind = SegmentKind::Port;
    ls.port_id = left->id;
  }
  segs.push_back(ls);
  return segs;
}

Margins default_margins(const WaveguideGeometry& geom, double factor) {
  return Margins{factor * geom.ell(), factor * 2.0 * geom.ell()};
}

namespace {

void check_margins(const Margins& m, bool need_top) {
  if (!(m.left > 0.0))
    throw ValidationError(
        "left margin must be > 0 to clear the last step of the staircase");
  if (need_top && !(m.top > 0.0))
    throw ValidationError(
        "top margin must be > 0 to clear the tallest tail step");
}

// Columns of the x < 0 half, left to right; the branch column gets
// `branch_height`.
std::vector<Column> half_columns(const WaveguideGeometry& g, double x_port,
                                 double branch_height) {
  std::vector<Column> cols;
  const int n = g.step_count();
  cols.push_back({x_port, -g.tail_start(), g.heights().back()});
  for (int j = n - 2; j >= 0; --j) {
    const double h = j == 0 ? branch_height : g.heights()[j];
    cols.push_back({-g.breakpoint(j + 1), -g.breakpoint(j), h});
  }
  return cols;
}

Port side_port(int id, PortOrientation o, double x) {
  return Port{id, o, x, 0.0, 1.0, PortParity::FullInterval};
}

}  // namespace

TruncatedDomain truncate(const WaveguideGeometry& geom, const Margins& m) {
  check_margins(m, false);
  const double X = geom.tail_start() + m.left;
  TruncatedDomain d;
  d.k = geom.k();
  d.columns = half_columns(geom, -X, geom.branch_height());
  const std::size_t nhalf = d.columns.size();
  for (std::size_t i = nhalf; i-- > 0;) {
    const Column& c = d.columns[i];
    d.columns.push_back({-c.x1, -c.x0, c.height});
  }
  d.ports.push_back(side_port(kLeftPort, PortOrientation::Left, -X));
  d.ports.push_back(side_port(kRightPort, PortOrientation::Right, X));
  return d;
}

TruncatedDomain truncate(const HalfGuideProblem& problem, const Margins& m) {
  check_margins(m, false);
  const WaveguideGeometry& g = problem.geometry;
  const double X = g.tail_start() + m.left;
  TruncatedDomain d;
  d.k = g.k();
  d.columns = half_columns(g, -X, g.branch_height());
  d.ports.push_back(side_port(kLeftPort, PortOrientation::Left, -X));
  d.symmetry = problem.bc == SymmetryBc::NeumannOnSigma ? SymmetryLine::Neumann
                                                        : SymmetryLine::Dirichlet;
  return d;
}

TruncatedDomain truncate(const LimitGeometry& limit, SymmetryBc bc,
                         const Margins& m) {
  check_margins(m, true);
  const WaveguideGeometry& g = limit.base;
  const double X = g.tail_start() + m.left;
  const double Y = g.max_tail_height() + m.top;
  TruncatedDomain d;
  d.k = g.k();
  d.columns = half_columns(g, -X, Y);
  d.ports.push_back(side_port(kLeftPort, PortOrientation::Left, -X));
  d.ports.push_back(
      Port{kTopPort, PortOrientation::Top, Y, -g.ell(), 0.0, PortParity::HalfGuide});
  d.symmetry = bc == SymmetryBc::NeumannOnSigma ? SymmetryLine::Neumann
                                                : SymmetryLine::Dirichlet;
  return d;
}

bool cos_compatible(const Segment& s, double k) {
  if (!s.vertical()) return true;
  return std::abs(std::sin(k * s.a.x)) < 1e-12;
}

}  // namespace waveguide
