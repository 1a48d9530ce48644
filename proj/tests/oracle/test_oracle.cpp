#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mode_matching.hpp"
#include "waveguide/scattering.hpp"

namespace {

const double k08 = 0.8 * std::numbers::pi;

}  // namespace

TEST_CASE("mode matching conserves energy and converges in the mode count") {
  for (double L : {1.5, 2.0, 3.0, 4.2}) {
    const auto a = oracle::mode_matching(k08, L, 30);
    const auto b = oracle::mode_matching(k08, L, 60);
    CHECK(a.column_modes == static_cast<int>(std::ceil(30 * L)));
    CHECK(std::abs(std::norm(a.R) + std::norm(a.T) - 1.0) < 1e-12);
    // Mirror symmetry with a unit-circle r: R + T = 1.
    CHECK(std::abs(a.R + a.T - 1.0) < 1e-12);
    CHECK(std::abs(a.R - b.R) < 1e-3);
  }
}

TEST_CASE("a short branch barely scatters") {
  const auto o = oracle::mode_matching(k08, 1.01, 30);
  CHECK(std::abs(o.R) < 0.05);
}

TEST_CASE("bad arguments are rejected") {
  CHECK_THROWS(oracle::mode_matching(4.0, 2.0));
  CHECK_THROWS(oracle::mode_matching(k08, 1.0));
  CHECK_THROWS(oracle::mode_matching(k08, 2.0, 1));
}

TEST_CASE("finite elements agree with mode matching away from resonance") {
  const auto f = waveguide::solve_full(waveguide::build_omega(k08, 2.0), {});
  const auto o = oracle::mode_matching(k08, 2.0, 30);
  CHECK(std::abs(f.R - o.R) < 1e-3);
  CHECK(std::abs(f.T - o.T) < 1e-3);
}
