#include <doctest.h>

#include <cmath>
#include <numbers>

#include "waveguide/errors.hpp"
#include "waveguide/geometry.hpp"

using namespace waveguide;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("build_omega basic values") {
  const auto g = build_omega(0.8 * kPi, 2.5);
  CHECK(g.ell() == doctest::Approx(1.25).epsilon(1e-15));
  REQUIRE(g.heights().size() == 2);
  CHECK(g.heights()[0] == 2.5);
  CHECK(g.heights()[1] == 1.0);
  CHECK(build_omega(0.5 * kPi, 2.0).ell() == doctest::Approx(2.0));
  CHECK(g.ell() * g.k() == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("build_omega rejects bad input") {
  CHECK_THROWS_AS(build_omega(kPi, 2.0), ValidationError);
  CHECK_THROWS_AS(build_omega(0.0, 2.0), ValidationError);
  CHECK_THROWS_AS(build_omega(0.8 * kPi, 1.0), ValidationError);
  CHECK_THROWS_AS(build_omega(0.8 * kPi, 0.5), ValidationError);
}

TEST_CASE("build_staircase") {
  const auto g = build_staircase(0.8 * kPi, 4.5808, {2.5, 2.0, 1.5, 1.0});
  CHECK(g.step_count() == 5);
  CHECK(g.profile(1.3) == 2.5);
  CHECK(g.profile(-1.3) == 2.5);
  CHECK(g.profile(0.1) == 4.5808);
  CHECK(g.profile(100.0) == 1.0);
  CHECK(g.tail_start() == doctest::Approx(5.0));

  const auto single = build_staircase(0.8 * kPi, 2.5, {1.0});
  const auto omega = build_omega(0.8 * kPi, 2.5);
  CHECK(single.heights() == omega.heights());

  CHECK_THROWS_AS(build_staircase(0.8 * kPi, 3.0, {0.5}), ValidationError);
  CHECK_THROWS_AS(build_staircase(0.8 * kPi, 3.0, {1.5, 2.0, 1.0}), ValidationError);
  CHECK_NOTHROW(build_staircase(0.8 * kPi, 3.0, {1.5, 2.0, 1.0}, true));
  CHECK_THROWS_AS(build_staircase(0.8 * kPi, 3.0, {2.0}), ValidationError);
}

TEST_CASE("profile is even on a dense sample") {
  const auto g = build_staircase(0.8 * kPi, 4.0, {2.5, 2.0, 1.5, 1.0});
  for (int i = 0; i < 2000; ++i) {
    const double x = -9.0 + 18.0 * (i + 0.37) / 2000.0;
    CHECK(g.profile(x) == g.profile(-x));
  }
}

TEST_CASE("truncation of the half guide puts the port at -2 ell") {
  const auto g = build_omega(0.8 * kPi, 2.5);
  const auto d = truncate(half_guide(g, SymmetryBc::NeumannOnSigma), default_margins(g));
  CHECK(d.x_min() == doctest::Approx(-2.5));
  CHECK(d.x_max() == 0.0);
  REQUIRE(d.ports.size() == 1);
  CHECK(d.ports[0].position == doctest::Approx(-2.5));
  CHECK(d.symmetry == SymmetryLine::Neumann);
  CHECK(d.area() == doctest::Approx(1.25 * 1.0 + 1.25 * 2.5));

  const auto full = truncate(g, default_margins(g));
  CHECK(full.ports.size() == 2);
  CHECK(full.port(kLeftPort).position == doctest::Approx(-2.5));
  CHECK(full.port(kRightPort).position == doctest::Approx(2.5));

  const auto lim = truncate(limit_geometry(g), SymmetryBc::NeumannOnSigma, default_margins(g));
  CHECK(lim.ports.size() == 2);
  CHECK(lim.port(kTopPort).position == doctest::Approx(1.0 + 2.5));
  CHECK(lim.port(kTopPort).width() == doctest::Approx(1.25));

  CHECK_THROWS_AS(truncate(g, Margins{0.0, 1.0}), ValidationError);
}

TEST_CASE("boundary polygon is closed and counterclockwise") {
  const auto g = build_staircase(0.8 * kPi, 4.0, {2.5, 1.5, 1.0});
  for (const auto& d : {truncate(g, default_margins(g)),
                        truncate(half_guide(g, SymmetryBc::DirichletOnSigma), default_margins(g)),
                        truncate(limit_geometry(g), SymmetryBc::NeumannOnSigma,
                                 default_margins(g))}) {
    const auto segs = d.boundary();
    double area2 = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      const auto& next = segs[(i + 1) % segs.size()];
      CHECK(s.b.x == doctest::Approx(next.a.x));
      CHECK(s.b.y == doctest::Approx(next.a.y));
      CHECK((s.a.x == s.b.x || s.a.y == s.b.y));
      area2 += s.a.x * s.b.y - s.b.x * s.a.y;
    }
    CHECK(0.5 * area2 == doctest::Approx(d.area()).epsilon(1e-12));
  }
}

TEST_CASE("walls are compatible with sqrt(2/k) cos(kx)") {
  for (double k : {0.8 * kPi, 0.5 * kPi, 2.3}) {
    const auto g = build_staircase(k, 4.0, {2.5, 2.0, 1.5, 1.0});
    const auto d = truncate(half_guide(g, SymmetryBc::NeumannOnSigma), default_margins(g));
    for (const auto& s : d.boundary())
      if (s.kind == SegmentKind::Wall) CHECK(cos_compatible(s, k));
  }
}

TEST_CASE("ports sit on uniform sections") {
  const auto g = build_staircase(0.8 * kPi, 4.0, {2.5, 2.0, 1.0});
  const auto d = truncate(g, default_margins(g));
  for (const auto& p : d.ports) {
    const double x = p.position;
    CHECK(std::abs(x) > g.tail_start());
    CHECK(g.profile(x) == 1.0);
  }
}
