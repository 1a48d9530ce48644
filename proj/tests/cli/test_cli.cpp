#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>

#include "commands.hpp"
#include "waveguide/errors.hpp"

using namespace waveguide;
using cli::RunConfig;

namespace {

const json* find(const cli::CommandResult& r, const std::string& name, json& storage) {
  for (const auto& f : r.files)
    if (f.name == name) {
      storage = json::parse(f.contents);
      return &storage;
    }
  return nullptr;
}

}  // namespace

TEST_CASE("config validation rejects bad input before any solve") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.range = std::make_pair(3.0, 2.0);
  CHECK_THROWS_AS(c.validate(), ValidationError);
  CHECK_THROWS_AS(cli::cmd_sweep_invisibility(c), ValidationError);
  c.range = std::make_pair(2.0, 2.0);
  CHECK_THROWS_AS(c.validate(), ValidationError);

  RunConfig g;
  g.geometry = "spiral";
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g.geometry = "staircase";
  g.heights = {2.0, 1.5};  // does not end at 1
  CHECK_THROWS_AS(g.validate(), ValidationError);

  RunConfig k;
  k.k = 3.5;
  CHECK_THROWS_AS(k.validate(), ValidationError);
  RunConfig n;
  n.dtn_terms = 1;
  CHECK_THROWS_AS(n.validate(), ValidationError);
  RunConfig s;
  s.step = -0.1;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  RunConfig m;
  m.mode = "odd";
  CHECK_THROWS_AS(m.validate(), ValidationError);
  RunConfig l;
  CHECK_THROWS_AS(cli::cmd_solve_field(l), ValidationError);  // needs L
}

TEST_CASE("config JSON round trip and unknown keys") {
  RunConfig a;
  a.geometry = "staircase";
  a.L = 4.5808;
  a.range = std::make_pair(4.3, 4.8);
  a.step = 0.01;
  a.threads = 2;
  RunConfig b;
  b.merge_json(a.to_json());
  CHECK(b.to_json().dump() == a.to_json().dump());
  CHECK_THROWS_AS(b.merge_json(json{{"wavenumber", 1.0}}), ValidationError);
  CHECK_THROWS_AS(b.merge_json(json{{"range", {1.5}}}), ValidationError);
  CHECK_THROWS_AS(b.merge_json(json{{"k", "fast"}}), ValidationError);
  CHECK_THROWS_AS(b.merge_json(json::array()), ValidationError);
}

TEST_CASE("output directory defaults to the environment") {
  setenv("WAVEGUIDE_OUT_DIR", "/tmp/wg-env-out", 1);
  CHECK(cli::default_out_dir() == "/tmp/wg-env-out");
  unsetenv("WAVEGUIDE_OUT_DIR");
  CHECK(cli::default_out_dir() == "out");
}

TEST_CASE("limit-matrices report") {
  RunConfig c;
  const auto r = cli::cmd_limit_matrices(c);
  json j;
  REQUIRE(find(r, "limit_matrices.json", j));
  CHECK(j["config"]["k"].get<double>() == c.k);
  CHECK(j["warnings"].empty());
  CHECK(j["mixed"]["abs_S12"].get<double>() > 0.1);
  const auto cm = cplx_from_json(j["mixed"]["circle"]["center"]);
  CHECK(std::abs(cm) < 1e-3);
  CHECK(std::abs(j["mixed"]["circle"]["radius"].get<double>() - 1.0) < 1e-3);
  const auto cn = cplx_from_json(j["neumann"]["circle"]["center"]);
  CHECK(std::abs(cn) < 1e-3);
  CHECK(std::abs(j["neumann"]["circle"]["radius"].get<double>() - 1.0) < 1e-3);
  CHECK(j["neumann"]["reduced"]["abs_b_plus_d2"].get<double>() < 1e-3);
  for (const auto& v : j["neumann"]["threshold_relations"]) CHECK(v.get<double>() < 1e-3);

  // Byte-identical on a repeated run.
  const auto again = cli::cmd_limit_matrices(c);
  REQUIRE(again.files.size() == r.files.size());
  for (std::size_t i = 0; i < r.files.size(); ++i) CHECK(again.files[i].contents == r.files[i].contents);
}

TEST_CASE("solve-field at the first invisibility point") {
  RunConfig c;
  c.L = 2.5756;
  const auto r = cli::cmd_solve_field(c);
  json j;
  REQUIRE(find(r, "solve_field.json", j));
  CHECK(j["relative_re_v_minus_incident"].get<double>() < 1e-2);
  const auto T = cplx_from_json(j["coefficients"]["T"]);
  CHECK(std::abs(T - 1.0) < 1e-2);
  int svgs = 0;
  for (const auto& f : r.files) svgs += f.name.size() > 4 && f.name.ends_with(".svg");
  CHECK(svgs == 3);
}

TEST_CASE("sweep-invisibility on a short range finds the first peak") {
  RunConfig c;
  c.range = std::make_pair(2.5, 2.66);
  c.threads = 1;
  const auto r = cli::cmd_sweep_invisibility(c);
  json j;
  REQUIRE(find(r, "peaks.json", j));
  REQUIRE(j["peaks"].size() >= 1);
  CHECK(std::abs(j["peaks"][0]["L"].get<double>() - 2.5756) <= 0.02);
  CHECK(j["peaks"][0]["residual"].get<double>() < 1e-3);
  CHECK(j.contains("config"));

  const auto dir = std::filesystem::temp_directory_path() / "wg-cli-test";
  std::filesystem::remove_all(dir);
  const auto paths = cli::write_outputs(dir.string(), r);
  CHECK(paths.size() == r.files.size());
  for (const auto& p : paths) CHECK(std::filesystem::exists(p));
  std::filesystem::remove_all(dir);
}

TEST_CASE("asymptotic-compare needs six samples and reports rates") {
  RunConfig c;
  c.range = std::make_pair(3.0, 3.3);
  c.step = 0.1;
  CHECK_THROWS_AS(cli::cmd_asymptotic_compare(c), ValidationError);
  c.range = std::make_pair(3.0, 3.5);
  const auto r = cli::cmd_asymptotic_compare(c);
  CHECK(r.report["R"].contains("fitted_rate"));
  CHECK(r.report["s22"].contains("fitted_rate"));
  CHECK(r.report["gamma"].get<double>() == doctest::Approx(0.8 * std::numbers::pi * std::sqrt(3.0) / 2));
}
