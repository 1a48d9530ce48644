#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "waveguide/errors.hpp"
#include "waveguide/search.hpp"

using namespace waveguide;

namespace {

const double k08 = 0.8 * std::numbers::pi;

std::vector<SweepRecord> synthetic(const std::vector<double>& Ls, cplx (*f)(double)) {
  std::vector<SweepRecord> out;
  for (double L : Ls) {
    SweepRecord r;
    r.L = L;
    r.value = f(L);
    out.push_back(r);
  }
  return out;
}

std::vector<double> grid(double a, double b, double step) {
  std::vector<double> g;
  for (int i = 0; a + i * step <= b + 1e-12; ++i) g.push_back(a + i * step);
  return g;
}

}  // namespace

TEST_CASE("names and targets") {
  CHECK(std::string(to_string(Quantity::Rh)) == "Rh");
  CHECK(std::string(to_string(Target::s22_eq_minus1)) == "s22_eq_minus1");
  CHECK(quantity_of(Target::R_eq_1) == Quantity::R);
  CHECK(target_value(Target::s22_eq_minus1) == cplx(-1.0));
  GeometryFamily fam;
  CHECK(fam.is_omega());
  CHECK(fam.name() == "omega");
  fam.tail = {2.5, 2.0, 1.5, 1.0};
  CHECK(fam.name() == "staircase[2.5,2,1.5,1]");
  CHECK(fam.at(k08, 3.0).step_count() == 5);
}

TEST_CASE("peaks of a unit-circle curve crossing the target") {
  // e^{i 2 pi L / P} hits 1 at multiples of P.
  const auto recs = synthetic(grid(0.3, 5.6, 0.02),
                              [](double L) { return std::polar(1.0, 2.0 * std::numbers::pi * L / 1.25); });
  const auto ps = detect_peaks(recs, Target::T_eq_1);
  REQUIRE(ps.peaks.size() == 4);
  for (std::size_t i = 0; i < ps.peaks.size(); ++i) {
    CHECK(std::abs(ps.peaks[i].L - 1.25 * (i + 1)) <= 0.01 + 1e-12);
    CHECK(ps.peaks[i].lo < ps.peaks[i].L);
    CHECK(ps.peaks[i].hi > ps.peaks[i].L);
  }
  REQUIRE(ps.spacings.size() == 3);
}

TEST_CASE("no peaks on a monotone curve, failed points are skipped") {
  auto recs = synthetic(grid(1.0, 2.0, 0.1), [](double L) { return cplx(L, 0.0); });
  CHECK(detect_peaks(recs, Target::T_eq_1).peaks.empty());  // maximum at the left edge
  recs = synthetic(grid(0.5, 1.5, 0.1), [](double L) { return cplx(L, 0.0); });
  recs[5].value.reset();  // L = 1.0, the exact hit
  const auto ps = detect_peaks(recs, Target::T_eq_1);
  CHECK(ps.peaks.empty());
}

TEST_CASE("spacing statistics") {
  const auto st = spacing_stats({1.0, 2.3, 3.55, 4.8, 6.05}, 1.25);
  CHECK(st.spacings.size() == 4);
  CHECK(st.mean == doctest::Approx((6.05 - 1.0) / 4.0));
  CHECK(st.deviation == doctest::Approx(std::abs(st.mean - 1.25) / 1.25));
  CHECK(st.tail_monotone);
  CHECK_FALSE(spacing_stats({0.0, 1.25, 2.5, 3.9}, 1.25).tail_monotone);
  CHECK_THROWS_AS(spacing_stats({1.0}, 1.25), ValidationError);
}

TEST_CASE("parallel_for visits each index once and forwards exceptions") {
  for (int threads : {1, 3}) {
    std::vector<std::atomic<int>> hits(57);
    parallel_for(57, threads, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 2,
                               [](int i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  parallel_for(0, 4, [](int) { FAIL("must not run"); });
}

TEST_CASE("sweep validation and failure capture") {
  GeometryFamily fam;
  SolveOptions opt;
  CHECK_THROWS_AS(sweep(k08, 2.0, 3.0, 0.0, Quantity::T, fam, opt), ValidationError);
  CHECK_THROWS_AS(sweep(k08, 3.0, 2.0, 0.1, Quantity::T, fam, opt), ValidationError);
  CHECK_THROWS_AS(sweep(k08, 0.5, 2.0, 0.1, Quantity::T, fam, opt), ValidationError);
  const auto bad = evaluate_quantity(k08, 0.9, Quantity::T, fam, opt);
  CHECK_FALSE(bad.value.has_value());
  CHECK_FALSE(bad.error.empty());
}

TEST_CASE("sweep returns ordered records") {
  GeometryFamily fam;
  SolveOptions opt;
  const auto recs = sweep(k08, 2.0, 2.1, 0.05, Quantity::r, fam, opt, 2);
  REQUIRE(recs.size() == 3);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(recs[i].L == doctest::Approx(2.0 + 0.05 * i));
    REQUIRE(recs[i].value.has_value());
    CHECK(std::abs(*recs[i].value - 1.0) < 1e-4);
  }
}

TEST_CASE("refine rejects a bracket without an interior minimum") {
  GeometryFamily fam;
  SolveOptions opt;
  opt.h = 1.25 / 8.0;
  RefineOptions ro;
  ro.tol_L = 1e-3;
  CHECK_THROWS_AS(refine(k08, 2.0, 2.1, Target::T_eq_1, fam, opt, ro), ValidationError);
  CHECK_THROWS_AS(refine(k08, 2.1, 2.0, Target::T_eq_1, fam, opt, ro), ValidationError);
}
