#include "waveguide/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "waveguide/errors.hpp"

namespace waveguide {

json geometry_to_json(const WaveguideGeometry& g) {
  json j;
  j["k"] = g.k();
  j["L"] = g.branch_height();
  j["tail_heights"] = g.tail_heights();
  return j;
}

WaveguideGeometry geometry_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("L"))
    throw ValidationError("geometry JSON needs fields k and L");
  const double k = j.at("k").get<double>();
  const double L = j.at("L").get<double>();
  std::vector<double> tail{1.0};
  if (j.contains("tail_heights")) tail = j.at("tail_heights").get<std::vector<double>>();
  if (tail.size() == 1 && tail[0] == 1.0) return build_omega(k, L);
  return build_staircase(k, L, tail, j.value("allow_nonmonotone", false));
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ValidationError("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const SolveDiagnostics& d) {
  return json{{"residual", d.residual}, {"rcond", d.rcond}, {"ill_conditioned", d.ill_conditioned}};
}

json to_json(const Eigen::MatrixXcd& S) {
  json rows = json::array();
  for (int i = 0; i < S.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < S.cols(); ++c) row.push_back(to_json(S(i, c)));
    rows.push_back(row);
  }
  return rows;
}

json scattering_record(const WaveguideGeometry& g, const ScatteringPair& p) {
  json j;
  j["k"] = g.k();
  j["L"] = g.branch_height();
  j["geometry"] = geometry_to_json(g);
  j["coefficients"] = {{"R", to_json(p.R)}, {"T", to_json(p.T)}};
  j["residuals"] = {{"energy", p.energy_residual}, {"solve", to_json(p.diagnostics)}};
  j["provenance"] = to_string(p.provenance);
  return j;
}

json peaks_to_json(const PeakSet& ps) {
  json j;
  j["target"] = to_string(ps.target);
  json arr = json::array();
  for (const auto& p : ps.peaks) {
    json e{{"L", p.L},
           {"bracket", {p.lo, p.hi}},
           {"residual", p.residual},
           {"coarse_residual", p.coarse_residual},
           {"accepted", p.accepted},
           {"evaluations", p.evaluations}};
    if (p.gate_residual >= 0.0) e["gate_residual"] = p.gate_residual;
    arr.push_back(e);
  }
  j["peaks"] = arr;
  j["spacings"] = ps.spacings;
  return j;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw ValidationError("CSV header must not be empty");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw ValidationError("CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    out_ += cells[i];
  }
  out_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  CsvWriter w({"L", "re", "im", "abs", "residual", "rcond", "ill_conditioned", "error"});
  for (const auto& r : records) {
    const double nan = std::nan("");
    const cplx v = r.value.value_or(cplx(nan, nan));
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    w.row(std::vector<std::string>{
        format_number(r.L), format_number(v.real()), format_number(v.imag()),
        format_number(std::abs(v)), format_number(r.residual),
        format_number(r.diagnostics.rcond), r.diagnostics.ill_conditioned ? "1" : "0", err});
  }
  return w.str();
}

std::string field_csv(const GridSpec& grid, const std::vector<std::optional<cplx>>& samples) {
  if (samples.size() != static_cast<std::size_t>(grid.nx) * grid.ny)
    throw ValidationError("sample count does not match the grid");
  CsvWriter w({"x", "y", "re", "im"});
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto& s = samples[static_cast<std::size_t>(j) * grid.nx + i];
      if (!s) continue;
      const Point p = grid.point(i, j);
      w.row({p.x, p.y, s->real(), s->imag()});
    }
  return w.str();
}

GridSpec field_grid(const ComplexField& field, int per_ell) {
  if (per_ell < 1) throw ValidationError("samples per ell must be >= 1");
  const Mesh& m = *field.mesh;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (int i = 0; i < m.vertex_count(); ++i) {
    const Point p = m.node(i);
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double ell = std::numbers::pi / field.k;
  GridSpec g;
  g.x0 = x0;
  g.x1 = x1;
  g.y0 = y0;
  g.y1 = y1;
  g.nx = static_cast<int>(std::lround((x1 - x0) / ell * per_ell)) + 1;
  g.ny = static_cast<int>(std::lround((y1 - y0) / ell * per_ell)) + 1;
  return g;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open " + path + " for writing");
  f << contents;
  if (!f) throw ValidationError("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace waveguide
