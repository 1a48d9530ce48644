#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "waveguide/errors.hpp"
#include "waveguide/mesh.hpp"

using namespace waveguide;

namespace {

constexpr double kPi = std::numbers::pi;

TruncatedDomain unit_square() {
  TruncatedDomain d;
  d.k = 0.8 * kPi;
  d.columns = {{0.0, 1.0, 1.0}};
  return d;
}

double total_area(const Mesh& m) {
  double a = 0.0;
  for (int t = 0; t < m.triangle_count(); ++t) a += m.signed_area(t);
  return a;
}

void check_invariants(const Mesh& m, double area) {
  for (int t = 0; t < m.triangle_count(); ++t) REQUIRE(m.signed_area(t) > 0.0);
  CHECK(m.node_count() == m.vertex_count() + m.edge_count());
  CHECK(std::abs(total_area(m) - area) <= 1e-12 * area);
  // Boundary edges are exactly the edges with one adjacent triangle.
  std::map<int, int> uses;
  for (int t = 0; t < m.triangle_count(); ++t) {
    const auto n = m.element_nodes(t);
    for (int a = 3; a < 6; ++a) ++uses[n[a]];
  }
  for (int e = 0; e < m.edge_count(); ++e) {
    const int u = uses[m.vertex_count() + e];
    CHECK((u == 1) == m.edge_tags()[e].has_value());
  }
}

}  // namespace

TEST_CASE("unit square h = 0.5") {
  const Mesh m = Mesh::generate(unit_square(), 0.5);
  CHECK(m.triangle_count() == 8);
  CHECK(m.vertex_count() == 9);
  CHECK(m.node_count() == 25);
  check_invariants(m, 1.0);
}

TEST_CASE("refinement multiplies triangles by four and keeps vertices") {
  const Mesh m = Mesh::generate(unit_square(), 0.5);
  const Mesh r = m.refine();
  CHECK(r.triangle_count() == 32);
  CHECK(r.h() == doctest::Approx(0.25));
  CHECK(r.refine().triangle_count() == 128);
  check_invariants(r, 1.0);
  std::set<std::pair<double, double>> fine;
  for (const auto& p : r.vertices()) fine.insert({p.x, p.y});
  for (const auto& p : m.vertices()) CHECK(fine.count({p.x, p.y}) == 1);
}

TEST_CASE("degenerate domains are rejected") {
  TruncatedDomain d = unit_square();
  d.columns[0].height = 0.0;
  CHECK_THROWS_AS(Mesh::generate(d, 0.5), ValidationError);
  CHECK_THROWS_AS(Mesh::generate(unit_square(), 0.0), ValidationError);
}

TEST_CASE("geometry lines are mesh lines") {
  const double k = 0.8 * kPi;
  const auto g = build_omega(k, 2.5);
  const auto d = truncate(g, default_margins(g));
  const Mesh m = Mesh::generate(d, 0.1);
  std::set<double> xs, ys;
  for (const auto& p : m.vertices()) {
    xs.insert(p.x);
    ys.insert(p.y);
  }
  for (double x : {-2.5, -1.25, 0.0, 1.25, 2.5}) {
    bool found = false;
    for (double v : xs) found = found || std::abs(v - x) < 1e-12;
    CHECK(found);
  }
  CHECK(ys.count(1.0) == 1);
  CHECK(ys.count(2.5) == 1);
  check_invariants(m, d.area());
}

TEST_CASE("limit-guide ports are tagged and cover their cross sections") {
  const double k = 0.8 * kPi;
  const auto g = build_staircase(k, 3.0, {2.0, 1.0});
  const auto d = truncate(limit_geometry(g), SymmetryBc::NeumannOnSigma, default_margins(g));
  const Mesh m = Mesh::generate(d, g.ell() / 8);
  for (int id : {kLeftPort, kTopPort}) {
    const auto edges = m.port_edges(id);
    REQUIRE(!edges.empty());
    const Port& p = d.port(id);
    CHECK(edges.front().t0 == doctest::Approx(p.span_lo).epsilon(1e-14));
    CHECK(edges.back().t1 == doctest::Approx(p.span_hi).epsilon(1e-14));
    for (std::size_t i = 1; i < edges.size(); ++i) CHECK(edges[i].t0 == edges[i - 1].t1);
  }
  CHECK(!m.boundary_nodes(SegmentKind::Symmetry).empty());
  check_invariants(m, d.area());
}

TEST_CASE("refinement inherits boundary tags") {
  const double k = 0.8 * kPi;
  const auto g = build_omega(k, 2.0);
  const auto d = truncate(half_guide(g, SymmetryBc::DirichletOnSigma), default_margins(g));
  const Mesh m = Mesh::generate(d, 0.3);
  const Mesh r = m.refine();
  auto count = [](const Mesh& mm, SegmentKind kind) {
    int c = 0;
    for (const auto& t : mm.edge_tags()) c += t && t->kind == kind;
    return c;
  };
  for (auto kind : {SegmentKind::Wall, SegmentKind::Port, SegmentKind::Symmetry})
    CHECK(count(r, kind) == 2 * count(m, kind));
}

TEST_CASE("full mesh is mirror symmetric and equals the mirrored half") {
  const double k = 0.8 * kPi;
  const auto g = build_omega(k, 2.3);
  const Mesh full = Mesh::generate(truncate(g, default_margins(g)), g.ell() / 6);
  const Mesh half =
      Mesh::generate(truncate(half_guide(g, SymmetryBc::NeumannOnSigma), default_margins(g)),
                     g.ell() / 6);
  const auto mirrored = mirror_union(half);
  REQUIRE(mirrored.mesh.node_count() == full.node_count());
  REQUIRE(mirrored.mesh.triangle_count() == full.triangle_count());
  for (int i = 0; i < full.node_count(); ++i) {
    CHECK(mirrored.mesh.node(i).x == doctest::Approx(full.node(i).x).epsilon(1e-14));
    CHECK(mirrored.mesh.node(i).y == full.node(i).y);
  }
  CHECK(mirrored.mesh.port_edges(kRightPort).size() == full.port_edges(kRightPort).size());
}

TEST_CASE("text dump lists nodes, elements and boundary edges") {
  const Mesh m = Mesh::generate(unit_square(), 0.5);
  std::ostringstream os;
  m.write_text(os);
  const std::string s = os.str();
  CHECK(s.find("nodes 25") == 0);
  CHECK(s.find("elements 8") != std::string::npos);
  CHECK(s.find("boundary_edges 8") != std::string::npos);
}
