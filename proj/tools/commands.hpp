#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waveguide/io.hpp"
#include "waveguide/search.hpp"

namespace waveguide::cli {

enum ExitCode { kOk = 0, kValidation = 2, kSolver = 3, kExceptional = 4 };

struct RunConfig {
  double k = 0.8 * 3.14159265358979323846;
  std::string geometry = "omega";  // omega | staircase
  std::vector<double> heights{2.5, 2.0, 1.5, 1.0};  // staircase tail
  std::optional<double> L;
  double h = 0.0;  // 0: ell / 20
  int dtn_terms = 15;
  double margin_factor = 1.0;
  std::optional<std::pair<double, double>> range;
  std::optional<double> step;
  double tol = 1e-4;  // refinement tolerance in L
  std::string out_dir = "out";
  int threads = 0;
  unsigned seed = 0;
  int samples_per_ell = 10;
  std::string target = "T";  // sweep-invisibility: T or R
  std::string mode = "full";  // solve-field: full | trapped
  bool gate = false;

  void validate() const;
  GeometryFamily family() const;
  WaveguideGeometry geometry_at(double L) const;
  SolveOptions solve_options() const;
  std::pair<double, double> range_or(double lo, double hi) const;

  json to_json() const;
  // Fields absent from `j` keep their current values.
  void merge_json(const json& j);
};

// Default output directory: $WAVEGUIDE_OUT_DIR, else "out".
std::string default_out_dir();

struct Output {
  std::string name;  // relative to the output directory
  std::string contents;
};

struct CommandResult {
  json report;  // also written as <command>.json
  std::vector<Output> files;
};

CommandResult cmd_sweep_invisibility(const RunConfig& cfg);
CommandResult cmd_sweep_trapped(const RunConfig& cfg);
CommandResult cmd_limit_matrices(const RunConfig& cfg);
CommandResult cmd_asymptotic_compare(const RunConfig& cfg);
CommandResult cmd_solve_field(const RunConfig& cfg);

// Creates the directory and writes every file; returns the written paths.
std::vector<std::string> write_outputs(const std::string& dir, const CommandResult& r);

}  // namespace waveguide::cli
