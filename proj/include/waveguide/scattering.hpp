#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "waveguide/geometry.hpp"
#include "waveguide/solver.hpp"

namespace waveguide {

// Discretization parameters shared by all extractions.
struct SolveOptions {
  double h = 0.0;            // element size; 0 selects ell / 20
  int dtn_terms = 15;
  double margin_factor = 1.0;  // scales the default truncation margins
  int refinements = 0;         // uniform refinements applied after generation

  double resolved_h(double k) const;
};

enum class Provenance { DirectFullGuide, CombinedHalfGuides };
const char* to_string(Provenance p);

struct ScatteringPair {
  cplx R{0.0};
  cplx T{0.0};
  double energy_residual = 0.0;
  double L = 0.0;
  double k = 0.0;
  Provenance provenance = Provenance::DirectFullGuide;
  SolveDiagnostics diagnostics;
};

struct HalfCoefficient {
  cplx value{0.0};  // r (Neumann on Sigma) or Rh (Dirichlet on Sigma)
  double modulus_residual = 0.0;
  SolveDiagnostics diagnostics;
};

struct HalfCoefficients {
  cplx r{0.0};
  cplx Rh{0.0};
  double r_modulus_residual = 0.0;
  double Rh_modulus_residual = 0.0;
};

// Max-entry norms of S conj(S)^T - I and S - S^T.
double unitarity_residual(const Eigen::MatrixXcd& S);
double symmetry_residual(const Eigen::MatrixXcd& S);

struct AugmentedMatrix {
  Eigen::Matrix2cd S;
  double unitarity = 0.0;
  double symmetry = 0.0;
  SolveDiagnostics diagnostics;
};

struct LimitMatrixMixed {
  Eigen::Matrix2cd S;
  double unitarity = 0.0;
  double symmetry = 0.0;
  SolveDiagnostics diagnostics;
};

struct LimitMatrixNeumann {
  Eigen::Matrix4cd S;
  double unitarity = 0.0;
  double symmetry = 0.0;
  SolveDiagnostics diagnostics;
};

// A solved problem: fields per incident plus the bases used to read them.
struct SolvedProblem {
  std::shared_ptr<const Mesh> mesh;
  TruncatedDomain domain;
  std::vector<PortBasis> bases;
  std::vector<Incident> incidents;
  std::vector<ComplexField> fields;
  SolveDiagnostics diagnostics;

  const PortBasis& basis(int port_id) const;
  // Coefficient of outgoing mode n at port `port_id` in field `field_index`.
  cplx outgoing_coefficient(int field_index, int port_id, int n) const;
};

SolvedProblem solve_problem(const TruncatedDomain& domain, const SolveOptions& opt,
                            std::vector<PortBasis> bases, std::vector<Incident> incidents,
                            bool dirichlet_symmetry, const std::string& geometry_id);

struct FullSolution {
  ScatteringPair pair;
  SolvedProblem problem;
};

// Direct solve in the truncated full guide with the piston incident from the left.
FullSolution solve_full_field(const WaveguideGeometry& geom, const SolveOptions& opt);
ScatteringPair solve_full(const WaveguideGeometry& geom, const SolveOptions& opt);

HalfCoefficient solve_half(const WaveguideGeometry& geom, SymmetryBc bc,
                           const SolveOptions& opt);
HalfCoefficients solve_half_pair(const WaveguideGeometry& geom, const SolveOptions& opt);

// R = (r + Rh)/2, T = (r - Rh)/2.
ScatteringPair combine(cplx r, cplx Rh);

AugmentedMatrix augmented(const WaveguideGeometry& geom, const SolveOptions& opt);
LimitMatrixMixed limit_mixed(const WaveguideGeometry& geom, const SolveOptions& opt);
LimitMatrixNeumann limit_neumann(const WaveguideGeometry& geom, const SolveOptions& opt);

struct TrappedCandidate {
  ComplexField field;           // u2 on the half guide
  cplx outgoing_piston{0.0};    // s21
  cplx s22{0.0};
  double tail_decay_rate = 0.0;
  double fit_x0 = 0.0, fit_x1 = 0.0;
  SolveDiagnostics diagnostics;
};

// Solves for u2 in a half guide whose left margin is `left_margin_ells`
// multiples of ell and fits the decay of its cross-section L2 norm over
// [x_port + ell/2, -tail_start - ell].
TrappedCandidate trapped_candidate(const WaveguideGeometry& geom, const SolveOptions& opt,
                                   double left_margin_ells = 3.0);

// Cross-section L2 norm of a field along the vertical line at x.
double cross_section_norm(const ComplexField& field, const Locator& loc, double x,
                          double y_top, int panels = 32);

// Least-squares slope of log(norm) against x over n samples in [x0, x1].
double fit_decay_rate(const ComplexField& field, double x0, double x1, double y_top,
                      int samples = 24);

enum class Parity { Even, Odd };

// Mirror extension of a half-guide field onto the full guide.
ComplexField unfold(const ComplexField& half, Parity parity, double sigma_tol = 1e-8);

struct RemarkChecks {
  std::optional<double> re_residual;  // sup |Re(v - incident)|, when |T - 1| < tol
  std::optional<double> im_residual;  // sup |Im v|, when |R - 1| < tol
  double sup_v = 0.0;
};

RemarkChecks remark_checks(const FullSolution& sol, double tol = 1e-2);

}  // namespace waveguide
