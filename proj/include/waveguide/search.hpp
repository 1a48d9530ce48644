#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "waveguide/scattering.hpp"

namespace waveguide {

enum class Quantity { T, R, r, Rh, s22 };
enum class Target { T_eq_1, R_eq_1, s22_eq_minus1 };

const char* to_string(Quantity q);
const char* to_string(Target t);
Quantity quantity_of(Target t);
cplx target_value(Target t);

// Omega (tail {1}) or a staircase tail; the branch height is the free parameter.
struct GeometryFamily {
  std::vector<double> tail{1.0};
  bool allow_nonmonotone = false;

  WaveguideGeometry at(double k, double L) const;
  bool is_omega() const { return tail.size() == 1; }
  std::string name() const;
};

struct SweepRecord {
  double L = 0.0;
  Quantity quantity = Quantity::T;
  std::optional<cplx> value;  // absent when the solve failed
  double residual = 0.0;      // energy, modulus or unitarity residual
  SolveDiagnostics diagnostics;
  std::string error;
};

// One solve (or pair of solves) for the quantity at L.
SweepRecord evaluate_quantity(double k, double L, Quantity q, const GeometryFamily& fam,
                              const SolveOptions& opt);

// Grid L0, L0 + step, ... <= L1 evaluated on `threads` workers (0: all cores).
std::vector<SweepRecord> sweep(double k, double L0, double L1, double step, Quantity q,
                               const GeometryFamily& fam, const SolveOptions& opt,
                               int threads = 0);

struct Peak {
  double L = 0.0;        // coarse grid point, then refined value
  double lo = 0.0, hi = 0.0;  // neighbouring grid points
  double residual = 0.0;  // |value - target|
  double coarse_residual = 0.0;
  double gate_residual = -1.0;  // residual after one mesh refinement, if gated
  bool accepted = true;
  int evaluations = 0;
};

struct PeakSet {
  Target target = Target::T_eq_1;
  std::vector<Peak> peaks;
  std::vector<double> spacings;
};

// Grid points where -ln|value - target| is strictly above both neighbours,
// all three evaluated successfully.
PeakSet detect_peaks(const std::vector<SweepRecord>& records, Target target);

struct RefineOptions {
  double tol_L = 1e-4;
  bool phase_polish = true;  // secant on the phase that vanishes at the target
  int max_polish = 8;
};

// Golden-section minimization of |value(L) - target| on [lo, hi].
Peak refine(double k, double lo, double hi, Target target, const GeometryFamily& fam,
            const SolveOptions& opt, const RefineOptions& ropt = {});

// Refines every coarse peak (brackets run concurrently). With `gate`, each
// refined peak is re-refined on a once-refined mesh and accepted only when
// its residual is < 1e-3 and the refined residual is smaller.
PeakSet refine_peaks(double k, const PeakSet& coarse, const GeometryFamily& fam,
                     const SolveOptions& opt, const RefineOptions& ropt = {},
                     bool gate = false, int threads = 0);

struct SpacingStats {
  std::vector<double> spacings;
  double mean = 0.0;
  double deviation = 0.0;  // |mean - period| / period
  bool tail_monotone = false;  // |spacing - period| decreases over the last 3
};

SpacingStats spacing_stats(const std::vector<double>& peaks, double period);

// Runs fn(i) for i in [0, n) on a pool of threads pulling from a shared index.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace waveguide
