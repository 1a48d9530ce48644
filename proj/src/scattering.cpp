#include "waveguide/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "waveguide/errors.hpp"

namespace waveguide {

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const Mesh> build_mesh(const TruncatedDomain& d, const SolveOptions& opt) {
  Mesh m = Mesh::generate(d, opt.resolved_h(d.k));
  for (int i = 0; i < opt.refinements; ++i) m = m.refine();
  return std::make_shared<const Mesh>(std::move(m));
}

Margins margins_for(const WaveguideGeometry& g, const SolveOptions& opt) {
  if (!(opt.margin_factor > 0.0)) throw ValidationError("margin factor must be > 0");
  return default_margins(g, opt.margin_factor);
}

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace

double SolveOptions::resolved_h(double k) const {
  if (h < 0.0) throw ValidationError("mesh size h must be >= 0 (0 selects ell/20)");
  return h > 0.0 ? h : kPi / k / 20.0;
}

const char* to_string(Provenance p) {
  return p == Provenance::DirectFullGuide ? "direct_full_guide" : "combined_half_guides";
}

double unitarity_residual(const Eigen::MatrixXcd& S) {
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(S.rows(), S.cols());
  return max_abs(S * S.adjoint() - I);
}

double symmetry_residual(const Eigen::MatrixXcd& S) {
  return max_abs(S - S.transpose());
}

const PortBasis& SolvedProblem::basis(int port_id) const {
  for (const auto& b : bases)
    if (b.port.id == port_id) return b;
  throw ValidationError("no basis for port " + std::to_string(port_id));
}

cplx SolvedProblem::outgoing_coefficient(int field_index, int port_id, int n) const {
  const PortBasis& b = basis(port_id);
  const auto& mode = b.modes.at(n);
  const double s = b.port.position;
  cplx a = port_amplitude(fields.at(field_index), b, n);
  const Incident& inc = incidents.at(field_index);
  if (inc.port_id == port_id && inc.mode == n) a -= mode.incoming->value(s);
  return a / mode.outgoing.value(s);
}

SolvedProblem solve_problem(const TruncatedDomain& domain, const SolveOptions& opt,
                            std::vector<PortBasis> bases, std::vector<Incident> incidents,
                            bool dirichlet_symmetry, const std::string& geometry_id) {
  SolvedProblem p;
  p.domain = domain;
  p.mesh = build_mesh(domain, opt);
  p.incidents = incidents;
  const auto sys = assemble(p.mesh, domain.k, bases, incidents, dirichlet_symmetry);
  p.bases = std::move(bases);
  p.fields = factor_solve(sys, &p.diagnostics, geometry_id);
  return p;
}

FullSolution solve_full_field(const WaveguideGeometry& geom, const SolveOptions& opt) {
  const double k = geom.k();
  const TruncatedDomain d = truncate(geom, margins_for(geom, opt));
  std::vector<PortBasis> bases = {strip_modes(k, d.port(kLeftPort), opt.dtn_terms, false),
                                  strip_modes(k, d.port(kRightPort), opt.dtn_terms, false)};
  FullSolution out{{}, solve_problem(d, opt, std::move(bases), {Incident{kLeftPort, 0}},
                                     false, geom.id())};
  ScatteringPair& pr = out.pair;
  pr.R = out.problem.outgoing_coefficient(0, kLeftPort, 0);
  pr.T = out.problem.outgoing_coefficient(0, kRightPort, 0);
  pr.energy_residual = std::abs(std::norm(pr.R) + std::norm(pr.T) - 1.0);
  pr.L = geom.branch_height();
  pr.k = k;
  pr.provenance = Provenance::DirectFullGuide;
  pr.diagnostics = out.problem.diagnostics;
  return out;
}

ScatteringPair solve_full(const WaveguideGeometry& geom, const SolveOptions& opt) {
  return solve_full_field(geom, opt).pair;
}

HalfCoefficient solve_half(const WaveguideGeometry& geom, SymmetryBc bc,
                           const SolveOptions& opt) {
  const double k = geom.k();
  const TruncatedDomain d = truncate(half_guide(geom, bc), margins_for(geom, opt));
  std::vector<PortBasis> bases = {strip_modes(k, d.port(kLeftPort), opt.dtn_terms, false)};
  const auto p = solve_problem(d, opt, std::move(bases), {Incident{kLeftPort, 0}},
                               bc == SymmetryBc::DirichletOnSigma, geom.id());
  HalfCoefficient c;
  c.value = p.outgoing_coefficient(0, kLeftPort, 0);
  c.modulus_residual = std::abs(std::abs(c.value) - 1.0);
  c.diagnostics = p.diagnostics;
  return c;
}

HalfCoefficients solve_half_pair(const WaveguideGeometry& geom, const SolveOptions& opt) {
  const auto r = solve_half(geom, SymmetryBc::NeumannOnSigma, opt);
  const auto R = solve_half(geom, SymmetryBc::DirichletOnSigma, opt);
  return {r.value, R.value, r.modulus_residual, R.modulus_residual};
}

ScatteringPair combine(cplx r, cplx Rh) {
  ScatteringPair p;
  p.R = 0.5 * (r + Rh);
  p.T = 0.5 * (r - Rh);
  p.energy_residual = std::abs(std::norm(p.R) + std::norm(p.T) - 1.0);
  p.provenance = Provenance::CombinedHalfGuides;
  return p;
}

AugmentedMatrix augmented(const WaveguideGeometry& geom, const SolveOptions& opt) {
  const double k = geom.k();
  const TruncatedDomain d =
      truncate(half_guide(geom, SymmetryBc::NeumannOnSigma), margins_for(geom, opt));
  std::vector<PortBasis> bases = {strip_modes(k, d.port(kLeftPort), opt.dtn_terms, true)};
  const auto p = solve_problem(d, opt, std::move(bases),
                               {Incident{kLeftPort, 0}, Incident{kLeftPort, 1}}, false,
                               geom.id());
  AugmentedMatrix a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a.S(i, j) = p.outgoing_coefficient(i, kLeftPort, j);
  a.unitarity = unitarity_residual(a.S);
  a.symmetry = symmetry_residual(a.S);
  a.diagnostics = p.diagnostics;
  return a;
}

LimitMatrixMixed limit_mixed(const WaveguideGeometry& geom, const SolveOptions& opt) {
  const double k = geom.k();
  const TruncatedDomain d = truncate(limit_geometry(geom), SymmetryBc::DirichletOnSigma,
                                     margins_for(geom, opt));
  std::vector<PortBasis> bases = {strip_modes(k, d.port(kLeftPort), opt.dtn_terms, false),
                                  branch_modes_mixed(k, d.port(kTopPort), opt.dtn_terms)};
  const auto p = solve_problem(d, opt, std::move(bases),
                               {Incident{kLeftPort, 0}, Incident{kTopPort, 0}}, true,
                               geom.id() + ".limit");
  LimitMatrixMixed m;
  for (int i = 0; i < 2; ++i) {
    m.S(i, 0) = p.outgoing_coefficient(i, kLeftPort, 0);
    m.S(i, 1) = p.outgoing_coefficient(i, kTopPort, 0);
  }
  m.unitarity = unitarity_residual(m.S);
  m.symmetry = symmetry_residual(m.S);
  m.diagnostics = p.diagnostics;
  return m;
}

LimitMatrixNeumann limit_neumann(const WaveguideGeometry& geom, const SolveOptions& opt) {
  const double k = geom.k();
  const TruncatedDomain d = truncate(limit_geometry(geom), SymmetryBc::NeumannOnSigma,
                                     margins_for(geom, opt));
  std::vector<PortBasis> bases = {strip_modes(k, d.port(kLeftPort), opt.dtn_terms, true),
                                  branch_modes(k, d.port(kTopPort), opt.dtn_terms)};
  const auto p = solve_problem(d, opt, std::move(bases),
                               {Incident{kLeftPort, 0}, Incident{kLeftPort, 1},
                                Incident{kTopPort, 0}, Incident{kTopPort, 1}},
                               false, geom.id() + ".limit");
  LimitMatrixNeumann m;
  for (int i = 0; i < 4; ++i) {
    m.S(i, 0) = p.outgoing_coefficient(i, kLeftPort, 0);
    m.S(i, 1) = p.outgoing_coefficient(i, kLeftPort, 1);
    m.S(i, 2) = p.outgoing_coefficient(i, kTopPort, 0);
    m.S(i, 3) = p.outgoing_coefficient(i, kTopPort, 1);
  }
  m.unitarity = unitarity_residual(m.S);
  m.symmetry = symmetry_residual(m.S);
  m.diagnostics = p.diagnostics;
  return m;
}

double cross_section_norm(const ComplexField& field, const Locator& loc, double x,
                          double y_top, int panels) {
  double acc = 0.0;
  const double w = y_top / panels;
  for (int i = 0; i < panels; ++i)
    for (int g = 0; g < 3; ++g) {
      const double y = (i + GaussLine3::x[g]) * w;
      const auto v = evaluate(field, loc, {x, y});
      if (v) acc += GaussLine3::w[g] * w * std::norm(*v);
    }
  return std::sqrt(acc);
}

double fit_decay_rate(const ComplexField& field, double x0, double x1, double y_top,
                      int samples) {
  if (samples < 2 || !(x1 > x0)) throw ValidationError("decay fit needs a nonempty window");
  Locator loc(field.mesh);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = x0 + (x1 - x0) * i / (samples - 1);
    const double nrm = cross_section_norm(field, loc, x, y_top);
    if (!(nrm > 0.0)) continue;
    const double y = std::log(nrm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw SolverError("decay fit: field vanishes on the window");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TrappedCandidate trapped_candidate(const WaveguideGeometry& geom, const SolveOptions& opt,
                                   double left_margin_ells) {
  const double k = geom.k();
  const double ell = geom.ell();
  Margins m = margins_for(geom, opt);
  m.left = left_margin_ells * ell;
  const TruncatedDomain d = truncate(half_guide(geom, SymmetryBc::NeumannOnSigma), m);
  std::vector<PortBasis> bases = {strip_modes(k, d.port(kLeftPort), opt.dtn_terms, true)};
  auto p = solve_problem(d, opt, std::move(bases),
                         {Incident{kLeftPort, 0}, Incident{kLeftPort, 1}}, false, geom.id());
  TrappedCandidate c;
  c.outgoing_piston = p.outgoing_coefficient(1, kLeftPort, 0);
  c.s22 = p.outgoing_coefficient(1, kLeftPort, 1);
  c.diagnostics = p.diagnostics;
  c.fit_x0 = d.x_min() + 0.5 * ell;
  c.fit_x1 = -geom.tail_start() - ell;
  c.field = std::move(p.fields[1]);
  c.tail_decay_rate = fit_decay_rate(c.field, c.fit_x0, c.fit_x1, 1.0);
  return c;
}

ComplexField unfold(const ComplexField& half, Parity parity, double sigma_tol) {
  const Mesh& hm = *half.mesh;
  if (parity == Parity::Odd) {
    const double scale = std::max(1.0, half.values.cwiseAbs().maxCoeff());
    for (int i = 0; i < hm.node_count(); ++i)
      if (hm.node(i).x == 0.0 && std::abs(half.values[i]) > sigma_tol * scale)
        throw ValidationError("odd unfolding needs a zero trace on the symmetry line");
  }
  auto mirrored = mirror_union(hm);
  ComplexField out;
  out.k = half.k;
  out.geometry_id = half.geometry_id;
  out.incident_id = half.incident_id + (parity == Parity::Even ? ".even" : ".odd");
  out.values.resize(mirrored.mesh.node_count());
  for (int i = 0; i < mirrored.mesh.node_count(); ++i) {
    const cplx v = half.values[mirrored.source_node[i]];
    out.values[i] = (mirrored.mirrored[i] && parity == Parity::Odd) ? -v : v;
  }
  out.mesh = std::make_shared<const Mesh>(std::move(mirrored.mesh));
  return out;
}

RemarkChecks remark_checks(const FullSolution& sol, double tol) {
  RemarkChecks rc;
  const ComplexField& v = sol.problem.fields.at(0);
  const Mesh& m = *v.mesh;
  const PortBasis& left = sol.problem.basis(kLeftPort);
  rc.sup_v = v.values.cwiseAbs().maxCoeff();
  const bool invisible = std::abs(sol.pair.T - 1.0) < tol;
  const bool reflecting = std::abs(sol.pair.R - 1.0) < tol;
  if (invisible) {
    double sup = 0.0;
    for (int i = 0; i < m.node_count(); ++i)
      sup = std::max(sup, std::abs(std::real(v.values[i] - left.incoming(0, m.node(i)))));
    rc.re_residual = sup;
  }
  if (reflecting) {
    double sup = 0.0;
    for (int i = 0; i < m.node_count(); ++i) sup = std::max(sup, std::abs(std::imag(v.values[i])));
    rc.im_residual = sup;
  }
  return rc;
}

}  // namespace waveguide
