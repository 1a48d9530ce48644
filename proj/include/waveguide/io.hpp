#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "waveguide/scattering.hpp"
#include "waveguide/search.hpp"

namespace waveguide {

using json = nlohmann::ordered_json;

// {k, L, tail_heights}. Omega is the staircase with tail [1].
json geometry_to_json(const WaveguideGeometry& g);
WaveguideGeometry geometry_from_json(const json& j);

json to_json(cplx z);  // [re, im]
cplx cplx_from_json(const json& j);
json to_json(const SolveDiagnostics& d);
json to_json(const Eigen::MatrixXcd& S);  // rows of [re, im] pairs

// {k, L, geometry, coefficients, residuals}
json scattering_record(const WaveguideGeometry& g, const ScatteringPair& p);
json peaks_to_json(const PeakSet& ps);

// 12 significant digits; "nan" for non-finite values.
std::string format_number(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

// L, re, im, abs, residual, rcond, ill_conditioned, error
std::string sweep_csv(const std::vector<SweepRecord>& records);

// x, y, re, im over the grid points that lie in the domain.
std::string field_csv(const GridSpec& grid, const std::vector<std::optional<cplx>>& samples);

// Grid over the bounding box of the field's mesh, `per_ell` samples per ell.
GridSpec field_grid(const ComplexField& field, int per_ell = 10);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace waveguide
