#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "waveguide/asymptotics.hpp"
#include "waveguide/errors.hpp"
#include "waveguide/geometry.hpp"
#include "waveguide/scattering.hpp"
#include "waveguide/search.hpp"

namespace py = pybind11;
using namespace waveguide;

namespace {

SymmetryBc parse_bc(const std::string& s) {
  if (s == "neumann") return SymmetryBc::NeumannOnSigma;
  if (s == "dirichlet") return SymmetryBc::DirichletOnSigma;
  throw ValidationError("bc must be 'neumann' or 'dirichlet', got '" + s + "'");
}

Quantity parse_quantity(const std::string& s) {
  for (Quantity q : {Quantity::T, Quantity::R, Quantity::r, Quantity::Rh, Quantity::s22})
    if (s == to_string(q)) return q;
  throw ValidationError("unknown quantity '" + s + "' (T, R, r, Rh, s22)");
}

Target parse_target(const std::string& s) {
  if (s == "T") return Target::T_eq_1;
  if (s == "R") return Target::R_eq_1;
  if (s == "s22") return Target::s22_eq_minus1;
  throw ValidationError("target must be 'T', 'R' or 's22', got '" + s + "'");
}

GeometryFamily family(const std::vector<double>& tail) {
  GeometryFamily f;
  f.tail = tail;
  return f;
}

py::dict diagnostics(const SolveDiagnostics& d) {
  py::dict out;
  out["residual"] = d.residual;
  out["rcond"] = d.rcond;
  out["ill_conditioned"] = d.ill_conditioned;
  return out;
}

py::dict peak_dict(const Peak& p) {
  py::dict out;
  out["L"] = p.L;
  out["lo"] = p.lo;
  out["hi"] = p.hi;
  out["residual"] = p.residual;
  out["accepted"] = p.accepted;
  out["evaluations"] = p.evaluations;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Helmholtz scattering in symmetric branched waveguides";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<ExceptionalCaseError>(m, "ExceptionalCaseError", PyExc_ArithmeticError);

  py::class_<WaveguideGeometry>(m, "Geometry")
      .def_property_readonly("k", &WaveguideGeometry::k)
      .def_property_readonly("L", &WaveguideGeometry::branch_height)
      .def_property_readonly("ell", &WaveguideGeometry::ell)
      .def_property_readonly("heights", &WaveguideGeometry::heights)
      .def_property_readonly("tail_heights", &WaveguideGeometry::tail_heights)
      .def("profile", &WaveguideGeometry::profile, py::arg("x"))
      .def("id", &WaveguideGeometry::id)
      .def("__repr__", [](const WaveguideGeometry& g) { return "<Geometry " + g.id() + ">"; });

  m.def("build_omega", &build_omega, py::arg("k"), py::arg("L"));
  m.def("build_staircase", &build_staircase, py::arg("k"), py::arg("L"), py::arg("tail"),
        py::arg("allow_nonmonotone") = false);

  py::class_<SolveOptions>(m, "SolveOptions")
      .def(py::init([](double h, int dtn_terms, double margin_factor, int refinements) {
             SolveOptions o;
             o.h = h;
             o.dtn_terms = dtn_terms;
             o.margin_factor = margin_factor;
             o.refinements = refinements;
             return o;
           }),
           py::arg("h") = 0.0, py::arg("dtn_terms") = 15, py::arg("margin_factor") = 1.0,
           py::arg("refinements") = 0)
      .def_readwrite("h", &SolveOptions::h)
      .def_readwrite("dtn_terms", &SolveOptions::dtn_terms)
      .def_readwrite("margin_factor", &SolveOptions::margin_factor)
      .def_readwrite("refinements", &SolveOptions::refinements)
      .def("resolved_h", &SolveOptions::resolved_h, py::arg("k"));

  m.def(
      "solve_full",
      [](const WaveguideGeometry& g, const SolveOptions& o) {
        const auto p = solve_full(g, o);
        py::dict out;
        out["R"] = p.R;
        out["T"] = p.T;
        out["energy_residual"] = p.energy_residual;
        out["provenance"] = to_string(p.provenance);
        out["diagnostics"] = diagnostics(p.diagnostics);
        return out;
      },
      py::arg("geometry"), py::arg("options") = SolveOptions{});
  m.def(
      "solve_half",
      [](const WaveguideGeometry& g, const std::string& bc, const SolveOptions& o) {
        return solve_half(g, parse_bc(bc), o).value;
      },
      py::arg("geometry"), py::arg("bc"), py::arg("options") = SolveOptions{});
  m.def(
      "combine",
      [](cplx r, cplx Rh) {
        const auto p = combine(r, Rh);
        return py::make_tuple(p.R, p.T);
      },
      py::arg("r"), py::arg("Rh"));
  m.def(
      "augmented", [](const WaveguideGeometry& g, const SolveOptions& o) { return augmented(g, o).S; },
      py::arg("geometry"), py::arg("options") = SolveOptions{});
  m.def(
      "limit_mixed", [](const WaveguideGeometry& g, const SolveOptions& o) { return limit_mixed(g, o).S; },
      py::arg("geometry"), py::arg("options") = SolveOptions{});
  m.def(
      "limit_neumann",
      [](const WaveguideGeometry& g, const SolveOptions& o) { return limit_neumann(g, o).S; },
      py::arg("geometry"), py::arg("options") = SolveOptions{});
  m.def(
      "trapped_candidate",
      [](const WaveguideGeometry& g, const SolveOptions& o) {
        const auto tc = trapped_candidate(g, o);
        py::dict out;
        out["s21"] = tc.outgoing_piston;
        out["s22"] = tc.s22;
        out["tail_decay_rate"] = tc.tail_decay_rate;
        out["fit_window"] = py::make_tuple(tc.fit_x0, tc.fit_x1);
        return out;
      },
      py::arg("geometry"), py::arg("options") = SolveOptions{});

  m.def("unitarity_residual", [](const Eigen::MatrixXcd& S) { return unitarity_residual(S); });
  m.def("symmetry_residual", [](const Eigen::MatrixXcd& S) { return symmetry_residual(S); });

  m.def("branch_gamma", &branch_gamma, py::arg("k"));
  m.def("threshold_lambda", &threshold_lambda, py::arg("k"));
  m.def("r_asy", &r_asy, py::arg("S"), py::arg("k"), py::arg("L"));
  m.def("s22_asy", &s22_asy, py::arg("S"), py::arg("k"), py::arg("L"));
  m.def(
      "mobius_circle_2",
      [](const Eigen::Matrix2cd& S) {
        const auto c = mobius_circle_2(S);
        return py::make_tuple(c.center, c.radius);
      },
      py::arg("S"));
  m.def(
      "predicted_periods",
      [](double k) {
        const auto p = predicted_periods(k);
        py::dict out;
        out["invisibility"] = p.invisibility;
        out["trapped"] = p.trapped;
        return out;
      },
      py::arg("k"));

  m.def(
      "sweep",
      [](double k, double L0, double L1, double step, const std::string& quantity,
         const std::vector<double>& tail, const SolveOptions& o, int threads) {
        const auto recs = sweep(k, L0, L1, step, parse_quantity(quantity), family(tail), o, threads);
        py::list out;
        for (const auto& r : recs)
          out.append(py::make_tuple(r.L, r.value ? py::cast(*r.value) : py::none(), r.residual));
        return out;
      },
      py::arg("k"), py::arg("L0"), py::arg("L1"), py::arg("step"), py::arg("quantity"),
      py::arg("tail") = std::vector<double>{1.0}, py::arg("options") = SolveOptions{}, py::arg("threads") = 0);
  m.def(
      "refine",
      [](double k, double lo, double hi, const std::string& target, const std::vector<double>& tail,
         const SolveOptions& o, double tol_L) {
        RefineOptions ro;
        ro.tol_L = tol_L;
        return peak_dict(refine(k, lo, hi, parse_target(target), family(tail), o, ro));
      },
      py::arg("k"), py::arg("lo"), py::arg("hi"), py::arg("target"),
      py::arg("tail") = std::vector<double>{1.0}, py::arg("options") = SolveOptions{},
      py::arg("tol_L") = 1e-4);
}
