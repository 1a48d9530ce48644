#include <doctest.h>

#include <cmath>
#include <numbers>

#include "waveguide/errors.hpp"
#include "waveguide/modal.hpp"

using namespace waveguide;

namespace {

constexpr double kPi = std::numbers::pi;
const double k08 = 0.8 * kPi;

Port left_port(double X) { return Port{kLeftPort, PortOrientation::Left, -X, 0.0, 1.0}; }
Port top_port(double k, double Y, double width = -1.0) {
  const double w = width > 0 ? width : kPi / k;
  return Port{kTopPort, PortOrientation::Top, Y, -w, 0.0, PortParity::HalfGuide};
}

// Centered difference of the outgoing longitudinal factor along the outward
// normal, divided by its value.
cplx numerical_log_derivative(const PortBasis& b, int n) {
  const auto& f = b.modes[n].outgoing;
  const double s = b.port.position;
  const double h = 1e-5;
  const cplx d = (f.value(s + h) - f.value(s - h)) / (2.0 * h);
  return b.normal_sign() * d / f.value(s);
}

}  // namespace

TEST_CASE("strip modes without packet") {
  const auto b = strip_modes(k08, left_port(2.5), 15, false);
  REQUIRE(b.size() == 15);
  const double beta = std::sqrt(kPi * kPi - k08 * k08);
  CHECK(beta == doctest::Approx(0.6 * kPi).epsilon(1e-14));
  CHECK(std::abs(b.modes[0].robin - cplx(0.0, k08)) < 1e-12);
  CHECK(std::abs(b.modes[1].robin - (-beta)) < 1e-12);
  for (int n = 2; n < 15; ++n)
    CHECK(std::abs(b.modes[n].robin + std::sqrt(n * n * kPi * kPi - k08 * k08)) < 1e-12);
  CHECK(beta * beta + k08 * k08 == doctest::Approx(kPi * kPi).epsilon(1e-15));
}

TEST_CASE("packet Robin coefficient matches the closed form") {
  const double X = 2.5;
  const auto b = strip_modes(k08, left_port(X), 15, true);
  const double beta = std::sqrt(kPi * kPi - k08 * k08);
  const cplx I(0.0, 1.0);
  const cplx expected = beta * (std::exp(beta * X) + I * std::exp(-beta * X)) /
                        (std::exp(beta * X) - I * std::exp(-beta * X));
  CHECK(std::abs(b.modes[1].robin - expected) < 1e-12);
  CHECK(b.modes[1].kind == ModeKind::WavePacket);
  CHECK_THROWS_AS(strip_modes(k08, left_port(X), 1, true), ValidationError);
}

TEST_CASE("Robin coefficients agree with finite differences") {
  const auto s1 = strip_modes(k08, left_port(2.5), 8, true);
  const auto s2 = strip_modes(k08, Port{kRightPort, PortOrientation::Right, 2.5, 0, 1}, 8, false);
  const auto b1 = branch_modes(k08, top_port(k08, 3.5), 8);
  const auto b2 = branch_modes_mixed(k08, top_port(k08, 3.5), 8);
  for (const PortBasis* b : {&s1, &s2, &b1, &b2})
    for (int n = 0; n < b->size(); ++n) {
      const cplx fd = numerical_log_derivative(*b, n);
      CHECK(std::abs(fd - b->modes[n].robin) < 1e-7 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("branch modes") {
  const auto b = branch_modes(k08, top_port(k08, 3.5), 15);
  CHECK(std::abs(b.modes[0].robin - cplx(0.0, k08)) < 1e-12);
  CHECK(std::abs(b.modes[1].robin - 1.0 / cplx(3.5, -1.0)) < 1e-12);
  CHECK(std::abs(b.modes[2].robin - (-k08 * std::sqrt(3.0))) < 1e-12);
  CHECK(b.modes[1].kind == ModeKind::Threshold);
  CHECK_THROWS_AS(branch_modes(k08, top_port(k08, 3.5, 1.2), 15), ValidationError);
}

TEST_CASE("mixed branch modes") {
  const auto b = branch_modes_mixed(k08, top_port(k08, 3.5), 15);
  const double gamma = k08 * std::sqrt(3.0) / 2.0;
  CHECK(gamma == doctest::Approx(2.1766).epsilon(1e-4));
  CHECK(b.modes[0].rate == doctest::Approx(gamma).epsilon(1e-14));
  CHECK(std::abs(b.modes[0].robin - cplx(0.0, gamma)) < 1e-12);
  const double ell = kPi / k08;
  const double q0 = kPi / (2.0 * ell);
  CHECK(gamma * gamma + q0 * q0 == doctest::Approx(k08 * k08).epsilon(1e-14));
  // First evanescent rate from the dispersion relation, evaluated independently.
  const double rate1 = std::sqrt(std::pow(3.0 * kPi / (2.0 * ell), 2) - k08 * k08);
  CHECK(b.modes[1].rate == doctest::Approx(k08 * std::sqrt(5.0) / 2.0).epsilon(1e-13));
  CHECK(b.modes[1].rate == doctest::Approx(rate1).epsilon(1e-13));
  for (int n = 0; n < b.size(); ++n) CHECK(b.modes[n].profile(0.0) == 0.0);
}

TEST_CASE("normalizations at the origin") {
  const auto s = strip_modes(k08, left_port(2.5), 4, true);
  const double beta = 0.6 * kPi;
  CHECK(std::abs(s.modes[0].outgoing.value(0.0) - 1.0 / std::sqrt(2.0 * k08)) < 1e-14);
  CHECK(std::abs(s.modes[1].outgoing.value(0.0) - cplx(1.0, -1.0) / std::sqrt(2.0 * beta)) <
        1e-14);
}

TEST_CASE("projection of sampled traces") {
  const auto b = strip_modes(k08, left_port(2.5), 15, false);
  auto p0 = [&](double t) { return cplx(b.modes[0].profile(t)); };
  CHECK(std::abs(project_trace(p0, b, 0) - 1.0) < 1e-12);
  auto mix = [&](double t) { return cplx(b.modes[0].profile(t) + 2.0 * b.modes[1].profile(t)); };
  CHECK(std::abs(project_trace(mix, b, 1) - 2.0) < 1e-12);
  auto c3 = [](double t) { return cplx(std::cos(3.0 * kPi * t)); };
  CHECK(std::abs(project_trace(c3, b, 1)) < 1e-12);
  for (int m = 0; m < 15; ++m)
    for (int n = 0; n < 15; ++n) {
      auto pm = [&](double t) { return cplx(b.modes[m].profile(t)); };
      CHECK(std::abs(project_trace(pm, b, n) - (m == n ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("projection on a branch port") {
  const auto b = branch_modes(k08, top_port(k08, 3.5), 15);
  for (int m = 0; m < 15; ++m)
    for (int n = 0; n < 15; ++n) {
      auto pm = [&](double t) { return cplx(b.modes[m].profile(t)); };
      CHECK(std::abs(project_trace(pm, b, n) - (m == n ? 1.0 : 0.0)) < 1e-10);
    }
}
