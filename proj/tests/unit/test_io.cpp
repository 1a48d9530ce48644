#include <doctest.h>

#include <cmath>
#include <numbers>

#include "waveguide/errors.hpp"
#include "waveguide/io.hpp"
#include "waveguide/plot.hpp"

using namespace waveguide;

namespace {

const double k08 = 0.8 * std::numbers::pi;

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("geometry JSON round trip is exact and deterministic") {
  for (const auto& g : {build_omega(k08, 2.5756), build_staircase(k08, 4.5808, {2.5, 2.0, 1.5, 1.0})}) {
    const json j = geometry_to_json(g);
    const auto back = geometry_from_json(json::parse(j.dump()));
    CHECK(back.k() == g.k());
    CHECK(back.heights() == g.heights());
    CHECK(geometry_to_json(back).dump() == j.dump());
  }
  CHECK(geometry_to_json(build_omega(k08, 2.0)).dump() ==
        "{\"k\":2.5132741228718345,\"L\":2.0,\"tail_heights\":[1.0]}");
  CHECK_THROWS_AS(geometry_from_json(json{{"k", 1.0}}), ValidationError);
  CHECK_THROWS_AS(geometry_from_json(json{{"k", k08}, {"L", 0.5}}), ValidationError);
}

TEST_CASE("complex values and matrices") {
  const cplx z(1.5, -0.25);
  CHECK(cplx_from_json(to_json(z)) == z);
  CHECK_THROWS_AS(cplx_from_json(json::array({1.0})), ValidationError);
  Eigen::Matrix2cd S;
  S << 1.0, cplx(0, 1), cplx(0, 1), 2.0;
  CHECK(to_json(Eigen::MatrixXcd(S)).dump() == "[[[1.0,0.0],[0.0,1.0]],[[0.0,1.0],[2.0,0.0]]]");
}

TEST_CASE("numbers carry 12 significant digits") {
  CHECK(format_number(std::numbers::pi) == "3.14159265359");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("CSV writer enforces its header") {
  CHECK_THROWS_AS(CsvWriter({}), ValidationError);
  CsvWriter w({"a", "b"});
  w.row(std::vector<double>{1.0, 0.5});
  CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), ValidationError);
  CHECK(w.str() == "a,b\n1,0.5\n");
}

TEST_CASE("sweep and field CSV") {
  SweepRecord ok;
  ok.L = 2.0;
  ok.value = cplx(0.5, -0.5);
  ok.residual = 1e-12;
  SweepRecord bad;
  bad.L = 2.02;
  bad.error = "failed, badly\nreally";
  const std::string csv = sweep_csv({ok, bad});
  CHECK(csv.rfind("L,re,im,abs,residual,rcond,ill_conditioned,error\n", 0) == 0);
  CHECK(count(csv, "\n") == 3);
  CHECK(csv.find("failed; badly really") != std::string::npos);
  CHECK(csv.find("2.02,nan,nan") != std::string::npos);

  GridSpec g;
  g.x0 = 0.0;
  g.x1 = 1.0;
  g.nx = 2;
  g.y0 = 0.0;
  g.y1 = 1.0;
  g.ny = 2;
  std::vector<std::optional<cplx>> s = {cplx(1, 2), std::nullopt, cplx(3, 4), cplx(5, 6)};
  const std::string f = field_csv(g, s);
  CHECK(f == "x,y,re,im\n0,0,1,2\n0,1,3,4\n1,1,5,6\n");
  s.pop_back();
  CHECK_THROWS_AS(field_csv(g, s), ValidationError);
}

TEST_CASE("peak set JSON") {
  PeakSet ps;
  ps.target = Target::R_eq_1;
  Peak p;
  p.L = 4.3758;
  p.gate_residual = 1e-6;
  ps.peaks = {p};
  const json j = peaks_to_json(ps);
  CHECK(j["target"] == "R_eq_1");
  CHECK(j["peaks"][0]["L"].get<double>() == 4.3758);
  CHECK(j["peaks"][0].contains("gate_residual"));
}

TEST_CASE("plot helpers") {
  const auto t = plot::nice_ticks(1.3, 8.0);
  REQUIRE_FALSE(t.empty());
  CHECK(t.front() >= 1.3);
  CHECK(t.back() <= 8.0);
  CHECK(plot::nice_ticks(1.0, 1.0).empty());
  CHECK(plot::diverging_color(0.0) == "#ffffff");
  CHECK(plot::diverging_color(1.0) == "#b40426");
  CHECK(plot::diverging_color(-5.0) == "#3b4cc0");

  plot::LinePlot lp;
  lp.title = "a < b";
  lp.series.push_back({{0, 1, NAN, 2, 3}, {0, 1, 1, 4, 9}, "sq", "#000000"});
  lp.series.push_back(plot::circle(0.0, 1.0, "unit", "#888888", 16));
  const std::string svg = plot::render(lp);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "<polyline") == 3);  // the NaN splits the first series
  CHECK(svg.find("a &lt; b") != std::string::npos);
  CHECK(svg == plot::render(lp));
  lp.series[0].y.pop_back();
  CHECK_THROWS_AS(plot::render(lp), ValidationError);

  GridSpec g;
  g.nx = 3;
  g.ny = 2;
  std::vector<std::optional<double>> v = {1.0, -1.0, std::nullopt, 0.0, 0.5, 0.25};
  const std::string hm = plot::heatmap(g, v, "field");
  CHECK(count(hm, "<rect") == 1 + 5 + 64);
  v.pop_back();
  CHECK_THROWS_AS(plot::heatmap(g, v, "x"), ValidationError);
}
