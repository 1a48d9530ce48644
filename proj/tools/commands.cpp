#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "waveguide/asymptotics.hpp"
#include "waveguide/errors.hpp"
#include "waveguide/log.hpp"
#include "waveguide/plot.hpp"

namespace waveguide::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> abs_log(const std::vector<cplx>& v, cplx target) {
  std::vector<double> out;
  for (const auto& z : v) out.push_back(-std::log(std::abs(z - target)));
  return out;
}

json peak_with_config(const PeakSet& ps, const RunConfig& cfg, const std::string& command) {
  json j;
  j["command"] = command;
  j["config"] = cfg.to_json();
  j.update(peaks_to_json(ps));
  return j;
}

std::string heatmap_of(const GridSpec& grid, const std::vector<std::optional<cplx>>& s,
                       const std::function<double(cplx, Point)>& f, const std::string& title) {
  std::vector<std::optional<double>> vals(s.size());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t n = static_cast<std::size_t>(j) * grid.nx + i;
      if (s[n]) vals[n] = f(*s[n], grid.point(i, j));
    }
  return plot::heatmap(grid, vals, title);
}

struct SupNorms {
  double sup_v = 0.0;
  double sup_re_scattered = 0.0;  // sup |Re(v - incident)|
  double sup_im = 0.0;
};

SupNorms nodal_sup(const FullSolution& sol) {
  const auto& f = sol.problem.fields.front();
  const auto& left = sol.problem.basis(kLeftPort);
  SupNorms s;
  for (int i = 0; i < f.values.size(); ++i) {
    const cplx v = f.values[i];
    const Point p = f.mesh->node(i);
    s.sup_v = std::max(s.sup_v, std::abs(v));
    s.sup_re_scattered = std::max(s.sup_re_scattered, std::abs((v - left.incoming(0, p)).real()));
    s.sup_im = std::max(s.sup_im, std::abs(v.imag()));
  }
  return s;
}

void export_field(CommandResult& r, const ComplexField& f, const std::string& stem,
                  int per_ell, const std::string& title) {
  const GridSpec g = field_grid(f, per_ell);
  const auto s = eval_on_grid(f, g);
  r.files.push_back({stem + ".csv", field_csv(g, s)});
  r.files.push_back(
      {stem + "_re.svg", heatmap_of(g, s, [](cplx v, Point) { return v.real(); }, "Re " + title)});
}

}  // namespace

void RunConfig::validate() const {
  if (!(k > 0.0 && k < kPi)) throw ValidationError("--k must lie in (0, pi)");
  if (geometry != "omega" && geometry != "staircase")
    throw ValidationError("--geometry must be omega or staircase, got '" + geometry + "'");
  if (L && !(*L > 1.0)) throw ValidationError("--L must be > 1");
  if (h < 0.0) throw ValidationError("--h must be >= 0 (0 selects ell/20)");
  if (dtn_terms < 2) throw ValidationError("--dtn-terms must be >= 2");
  if (!(margin_factor > 0.0)) throw ValidationError("--margin-factor must be > 0");
  if (range) {
    if (!(range->second > range->first))
      throw ValidationError("--range is empty: need lo < hi");
    if (!(range->first > 1.0)) throw ValidationError("--range must start above L = 1");
  }
  if (step && !(*step > 0.0)) throw ValidationError("--step must be > 0");
  if (!(tol > 0.0)) throw ValidationError("--tol must be > 0");
  if (threads < 0) throw ValidationError("--threads must be >= 0");
  if (samples_per_ell < 1) throw ValidationError("samples per ell must be >= 1");
  if (target != "T" && target != "R") throw ValidationError("--target must be T or R");
  if (mode != "full" && mode != "trapped")
    throw ValidationError("--mode must be full or trapped, got '" + mode + "'");
  // Builds once to surface geometry errors before any solve.
  geometry_at(L.value_or(2.0));
}

GeometryFamily RunConfig::family() const {
  GeometryFamily f;
  if (geometry == "staircase") f.tail = heights;
  return f;
}

WaveguideGeometry RunConfig::geometry_at(double Lv) const { return family().at(k, Lv); }

SolveOptions RunConfig::solve_options() const {
  SolveOptions o;
  o.h = h;
  o.dtn_terms = dtn_terms;
  o.margin_factor = margin_factor;
  return o;
}

std::pair<double, double> RunConfig::range_or(double lo, double hi) const {
  return range.value_or(std::make_pair(lo, hi));
}

json RunConfig::to_json() const {
  json j;
  j["k"] = k;
  j["geometry"] = geometry;
  j["heights"] = heights;
  j["L"] = L ? json(*L) : json(nullptr);
  j["h"] = h;
  j["h_resolved"] = solve_options().resolved_h(k);
  j["dtn_terms"] = dtn_terms;
  j["margin_factor"] = margin_factor;
  j["range"] = range ? json::array({range->first, range->second}) : json(nullptr);
  j["step"] = step ? json(*step) : json(nullptr);
  j["tol"] = tol;
  j["out"] = out_dir;
  j["threads"] = threads;
  j["seed"] = seed;
  j["samples_per_ell"] = samples_per_ell;
  j["target"] = target;
  j["mode"] = mode;
  j["gate"] = gate;
  return j;
}

void RunConfig::merge_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
  static const std::vector<std::string> known{
      "k",   "geometry", "heights", "L",    "h",       "h_resolved",      "dtn_terms",
      "margin_factor", "range",   "step", "tol",     "out",             "threads",
      "seed", "samples_per_ell",  "target", "mode", "gate"};
  for (const auto& [key, v] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ValidationError("unknown config key '" + key + "'");
  try {
    if (j.contains("k")) k = j["k"].get<double>();
    if (j.contains("geometry")) geometry = j["geometry"].get<std::string>();
    if (j.contains("heights")) heights = j["heights"].get<std::vector<double>>();
    if (j.contains("L") && !j["L"].is_null()) L = j["L"].get<double>();
    if (j.contains("h")) h = j["h"].get<double>();
    if (j.contains("dtn_terms")) dtn_terms = j["dtn_terms"].get<int>();
    if (j.contains("margin_factor")) margin_factor = j["margin_factor"].get<double>();
    if (j.contains("range") && !j["range"].is_null()) {
      const auto r = j["range"].get<std::vector<double>>();
      if (r.size() != 2) throw ValidationError("config range must be [lo, hi]");
      range = std::make_pair(r[0], r[1]);
    }
    if (j.contains("step") && !j["step"].is_null()) step = j["step"].get<double>();
    if (j.contains("tol")) tol = j["tol"].get<double>();
    if (j.contains("out")) out_dir = j["out"].get<std::string>();
    if (j.contains("threads")) threads = j["threads"].get<int>();
    if (j.contains("seed")) seed = j["seed"].get<unsigned>();
    if (j.contains("samples_per_ell")) samples_per_ell = j["samples_per_ell"].get<int>();
    if (j.contains("target")) target = j["target"].get<std::string>();
    if (j.contains("mode")) mode = j["mode"].get<std::string>();
    if (j.contains("gate")) gate = j["gate"].get<bool>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config file: ") + e.what());
  }
}

std::string default_out_dir() {
  const char* env = std::getenv("WAVEGUIDE_OUT_DIR");
  return env && *env ? env : "out";
}

CommandResult cmd_sweep_invisibility(const RunConfig& cfg) {
  cfg.validate();
  const auto [lo, hi] = cfg.range_or(1.3, 8.0);
  const double step = cfg.step.value_or(0.02);
  const Target target = cfg.target == "R" ? Target::R_eq_1 : Target::T_eq_1;
  const Quantity q = quantity_of(target);
  const auto fam = cfg.family();
  const auto opt = cfg.solve_options();
  log::info("sweep_start", {{"quantity", to_string(q)}, {"lo", lo}, {"hi", hi}, {"step", step}});

  const auto records = sweep(cfg.k, lo, hi, step, q, fam, opt, cfg.threads);
  const auto coarse = detect_peaks(records, target);
  RefineOptions ropt;
  ropt.tol_L = cfg.tol;
  const auto peaks = refine_peaks(cfg.k, coarse, fam, opt, ropt, cfg.gate, cfg.threads);
  log::info("peaks_refined", {{"count", peaks.peaks.size()}});

  CommandResult r;
  r.files.push_back({"sweep.csv", sweep_csv(records)});
  json pj = peak_with_config(peaks, cfg, "sweep-invisibility");
  std::vector<double> accepted;
  for (const auto& p : peaks.peaks)
    if (p.accepted) accepted.push_back(p.L);
  if (accepted.size() >= 2) {
    const auto per = predicted_periods(cfg.k).invisibility;
    const auto st = spacing_stats(accepted, per);
    pj["spacing"] = {{"mean", st.mean}, {"predicted", per}, {"relative_deviation", st.deviation},
                     {"tail_monotone", st.tail_monotone}};
  }
  r.files.push_back({"peaks.json", pj.dump(2)});

  std::vector<double> Ls, re, im;
  std::vector<cplx> vals;
  for (const auto& rec : records) {
    if (!rec.value) continue;
    Ls.push_back(rec.L);
    re.push_back(rec.value->real());
    im.push_back(rec.value->imag());
    vals.push_back(*rec.value);
  }
  const std::string name = to_string(q);
  plot::LinePlot curve;
  curve.title = name + "(L) in the complex plane";
  curve.xlabel = "Re " + name;
  curve.ylabel = "Im " + name;
  curve.equal_aspect = true;
  curve.series.push_back(plot::circle(0.0, 1.0, "unit circle", "#888888"));
  curve.series.push_back(plot::circle(0.5, 0.5, "radius 1/2", "#2ca02c"));
  curve.series.push_back({re, im, name + "(L)", "#d62728", false, true});
  r.files.push_back({name + "_curve.svg", plot::render(curve)});

  plot::LinePlot lg;
  lg.title = "-ln|" + name + " - 1|";
  lg.xlabel = "L";
  lg.ylabel = "-ln|" + name + " - 1|";
  lg.series.push_back({Ls, abs_log(vals, 1.0), "", "#1f77b4"});
  r.files.push_back({name + "_log.svg", plot::render(lg)});

  r.report = pj;
  return r;
}

CommandResult cmd_sweep_trapped(const RunConfig& cfg) {
  cfg.validate();
  const auto [lo, hi] = cfg.range_or(1.3, 8.0);
  const double step = cfg.step.value_or(0.02);
  const auto fam = cfg.family();
  const auto opt = cfg.solve_options();
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  log::info("sweep_start", {{"quantity", "augmented"}, {"lo", lo}, {"hi", hi}, {"step", step}});

  std::vector<std::optional<AugmentedMatrix>> mats(n);
  std::vector<SweepRecord> records(n);
  parallel_for(n, cfg.threads, [&](int i) {
    SweepRecord& rec = records[i];
    rec.L = lo + i * step;
    rec.quantity = Quantity::s22;
    try {
      mats[i] = augmented(fam.at(cfg.k, rec.L), opt);
      rec.value = mats[i]->S(1, 1);
      rec.residual = mats[i]->unitarity;
      rec.diagnostics = mats[i]->diagnostics;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });

  const auto coarse = detect_peaks(records, Target::s22_eq_minus1);
  RefineOptions ropt;
  ropt.tol_L = cfg.tol;
  const auto peaks = refine_peaks(cfg.k, coarse, fam, opt, ropt, cfg.gate, cfg.threads);

  CommandResult r;
  {
    CsvWriter w({"L", "s11_re", "s11_im", "s12_re", "s12_im", "s21_re", "s21_im", "s22_re",
                 "s22_im", "unitarity", "symmetry", "rcond"});
    for (int i = 0; i < n; ++i) {
      if (!mats[i]) continue;
      const auto& S = mats[i]->S;
      w.row({records[i].L, S(0, 0).real(), S(0, 0).imag(), S(0, 1).real(), S(0, 1).imag(),
             S(1, 0).real(), S(1, 0).imag(), S(1, 1).real(), S(1, 1).imag(),
             mats[i]->unitarity, mats[i]->symmetry, mats[i]->diagnostics.rcond});
    }
    r.files.push_back({"sweep.csv", w.str()});
  }

  json pj = peak_with_config(peaks, cfg, "sweep-trapped");
  double max11 = 0, max12 = 0, max21 = 0, max22 = 0;
  for (const auto& m : mats) {
    if (!m) continue;
    max11 = std::max(max11, std::abs(m->S(0, 0) - 1.0));
    max12 = std::max(max12, std::abs(m->S(0, 1)));
    max21 = std::max(max21, std::abs(m->S(1, 0)));
    max22 = std::max(max22, std::abs(std::abs(m->S(1, 1)) - 1.0));
  }
  pj["identities"] = {{"max_abs_s11_minus_1", max11},
                      {"max_abs_s12", max12},
                      {"max_abs_s21", max21},
                      {"max_abs_modulus_s22_minus_1", max22}};
  std::vector<double> accepted;
  for (const auto& p : peaks.peaks)
    if (p.accepted) accepted.push_back(p.L);
  if (accepted.size() >= 2) {
    const auto per = predicted_periods(cfg.k).trapped;
    const auto st = spacing_stats(accepted, per);
    pj["spacing"] = {{"mean", st.mean}, {"predicted", per}, {"relative_deviation", st.deviation},
                     {"tail_monotone", st.tail_monotone}};
  }

  json modes = json::array();
  int idx = 0;
  for (const auto& p : peaks.peaks) {
    if (!p.accepted) continue;
    const auto tc = trapped_candidate(fam.at(cfg.k, p.L), opt);
    const auto full = unfold(tc.field, Parity::Even);
    const std::string stem = "trapped_" + std::to_string(idx++);
    export_field(r, tc.field, stem + "_half", cfg.samples_per_ell, "u2 (half guide)");
    export_field(r, full, stem + "_full", cfg.samples_per_ell, "trapped mode");
    modes.push_back({{"L", p.L},
                     {"s21", to_json(tc.outgoing_piston)},
                     {"s22", to_json(tc.s22)},
                     {"tail_decay_rate", tc.tail_decay_rate},
                     {"beta", std::sqrt(kPi * kPi - cfg.k * cfg.k)},
                     {"fit_window", {tc.fit_x0, tc.fit_x1}},
                     {"files", {stem + "_half.csv", stem + "_full.csv"}}});
  }
  pj["trapped_modes"] = modes;
  r.files.push_back({"peaks.json", pj.dump(2)});

  // s_ij(L) in the complex plane and -ln|s22 + 1|.
  plot::LinePlot cp;
  cp.title = "augmented matrix entries s_ij(L)";
  cp.xlabel = "Re";
  cp.ylabel = "Im";
  cp.equal_aspect = true;
  cp.series.push_back(plot::circle(0.0, 1.0, "unit circle", "#888888"));
  const char* colors[4] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"};
  const char* names[4] = {"s11", "s12", "s21", "s22"};
  std::vector<double> Ls;
  std::vector<cplx> s22;
  for (int e = 0; e < 4; ++e) {
    plot::Series s;
    s.label = names[e];
    s.color = colors[e];
    s.markers = true;
    for (const auto& m : mats) {
      if (!m) continue;
      const cplx v = m->S(e / 2, e % 2);
      s.x.push_back(v.real());
      s.y.push_back(v.imag());
    }
    cp.series.push_back(s);
  }
  for (int i = 0; i < n; ++i)
    if (mats[i]) {
      Ls.push_back(records[i].L);
      s22.push_back(mats[i]->S(1, 1));
    }
  r.files.push_back({"s_entries.svg", plot::render(cp)});
  plot::LinePlot lg;
  lg.title = "-ln|s22 + 1|";
  lg.xlabel = "L";
  lg.ylabel = "-ln|s22 + 1|";
  lg.series.push_back({Ls, abs_log(s22, -1.0), "", "#d62728"});
  r.files.push_back({"s22_log.svg", plot::render(lg)});

  r.report = pj;
  return r;
}

CommandResult cmd_limit_matrices(const RunConfig& cfg) {
  cfg.validate();
  const auto geom = cfg.geometry_at(cfg.L.value_or(2.0));
  const auto opt = cfg.solve_options();
  json j;
  j["command"] = "limit-matrices";
  j["config"] = cfg.to_json();
  json warnings = json::array();
  auto guarded = [&](const char* what, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const ExceptionalCaseError& e) {
      warnings.push_back({{"where", what}, {"case", to_string(e.which())}, {"message", e.what()}});
      log::warn("exceptional_case", {{"where", what}, {"case", to_string(e.which())}});
    }
  };

  const auto mixed = limit_mixed(geom, opt);
  json jm;
  jm["S"] = to_json(mixed.S);
  jm["unitarity"] = mixed.unitarity;
  jm["symmetry"] = mixed.symmetry;
  jm["abs_S12"] = std::abs(mixed.S(0, 1));
  jm["diagnostics"] = to_json(mixed.diagnostics);
  guarded("mobius_circle_2", [&] {
    const auto c = mobius_circle_2(mixed.S);
    jm["circle"] = {{"center", to_json(c.center)}, {"radius", c.radius}};
  });
  j["mixed"] = jm;

  const auto neu = limit_neumann(geom, opt);
  json jn;
  jn["S"] = to_json(neu.S);
  jn["unitarity"] = neu.unitarity;
  jn["symmetry"] = neu.symmetry;
  jn["diagnostics"] = to_json(neu.diagnostics);
  const auto rel = relpart_residuals(neu.S, cfg.k);
  jn["threshold_relations"] = rel;
  guarded("abcd", [&] {
    const auto c = abcd(neu.S);
    jn["reduced"] = {{"a", to_json(c.a)},
                     {"b", to_json(c.const_b)},
                     {"c", to_json(c.c)},
                     {"d", to_json(c.d)},
                     {"abs_b_plus_d2", c.b_plus_d2}};
    guarded("mobius_circle_4", [&] {
      const auto m = mobius_circle_4(c.a, c.c, c.d);
      jn["circle"] = {{"center", to_json(m.center)}, {"radius", m.radius}};
    });
  });
  guarded("s44", [&] {
    if (std::abs(neu.S(3, 3) + 1.0) < kExceptionalThreshold)
      throw ExceptionalCaseError(ExceptionalCase::ThresholdReflection, "s44 = -1");
  });
  j["neumann"] = jn;
  j["warnings"] = warnings;

  CommandResult r;
  r.report = j;
  r.files.push_back({"limit_matrices.json", j.dump(2)});
  return r;
}

CommandResult cmd_asymptotic_compare(const RunConfig& cfg) {
  cfg.validate();
  const auto [lo, hi] = cfg.range_or(3.0, 8.0);
  const double step = cfg.step.value_or(0.1);
  const auto fam = cfg.family();
  const auto opt = cfg.solve_options();
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n < 6) throw ValidationError("asymptotic comparison needs at least 6 samples in --range");

  const auto base = fam.at(cfg.k, lo);
  const auto mixed = limit_mixed(base, opt);
  const auto neu = limit_neumann(base, opt);

  std::vector<double> Ls(n);
  std::vector<cplx> Rh(n), s22(n), Rasy(n), s22asy(n);
  parallel_for(n, cfg.threads, [&](int i) {
    Ls[i] = lo + i * step;
    const auto g = fam.at(cfg.k, Ls[i]);
    Rh[i] = solve_half(g, SymmetryBc::DirichletOnSigma, opt).value;
    s22[i] = augmented(g, opt).S(1, 1);
  });
  for (int i = 0; i < n; ++i) {
    Rasy[i] = r_asy(mixed.S, cfg.k, Ls[i]);
    s22asy[i] = s22_asy(neu.S, cfg.k, Ls[i]);
  }

  std::vector<std::pair<double, cplx>> dR, dS;
  for (int i = 0; i < n; ++i) {
    dR.emplace_back(Ls[i], Rh[i]);
    dS.emplace_back(Ls[i], s22[i]);
  }
  const auto fitR = decay_compare(dR, [&](double L) { return r_asy(mixed.S, cfg.k, L); });
  const auto fitS = decay_compare(dS, [&](double L) { return s22_asy(neu.S, cfg.k, L); });
  const double gamma = branch_gamma(cfg.k);

  CommandResult r;
  CsvWriter w({"L", "R_re", "R_im", "Rasy_re", "Rasy_im", "R_err", "s22_re", "s22_im",
               "s22asy_re", "s22asy_im", "s22_err"});
  for (int i = 0; i < n; ++i)
    w.row({Ls[i], Rh[i].real(), Rh[i].imag(), Rasy[i].real(), Rasy[i].imag(),
           std::abs(Rh[i] - Rasy[i]), s22[i].real(), s22[i].imag(), s22asy[i].real(),
           s22asy[i].imag(), std::abs(s22[i] - s22asy[i])});
  r.files.push_back({"asymptotic.csv", w.str()});

  auto curves = [&](const std::string& nm, const std::vector<cplx>& d,
                    const std::vector<cplx>& a) {
    plot::LinePlot p;
    p.title = nm + "(L): direct and asymptotic";
    p.xlabel = "L";
    p.ylabel = nm;
    std::vector<double> dr, di, ar, ai;
    for (int i = 0; i < n; ++i) {
      dr.push_back(d[i].real());
      di.push_back(d[i].imag());
      ar.push_back(a[i].real());
      ai.push_back(a[i].imag());
    }
    p.series.push_back({Ls, dr, "Re direct", "#1f77b4"});
    p.series.push_back({Ls, di, "Im direct", "#d62728"});
    p.series.push_back({Ls, ar, "Re asymptotic", "#1f77b4", true});
    p.series.push_back({Ls, ai, "Im asymptotic", "#d62728", true});
    r.files.push_back({nm + "_asymptotic.svg", plot::render(p)});
    plot::LinePlot e;
    e.title = "ln|" + nm + " - " + nm + "_asy|";
    e.xlabel = "L";
    e.ylabel = "ln error";
    std::vector<double> le;
    for (int i = 0; i < n; ++i) le.push_back(std::log(std::abs(d[i] - a[i])));
    e.series.push_back({Ls, le, "", "#1f77b4"});
    r.files.push_back({nm + "_error.svg", plot::render(e)});
  };
  curves("R", Rh, Rasy);
  curves("s22", s22, s22asy);

  json j;
  j["command"] = "asymptotic-compare";
  j["config"] = cfg.to_json();
  j["gamma"] = gamma;
  j["R"] = {{"fitted_rate", fitR.rate},
            {"prefactor", fitR.prefactor},
            {"rate_over_gamma", fitR.rate / gamma}};
  j["s22"] = {{"fitted_rate", fitS.rate}, {"prefactor", fitS.prefactor}};
  r.files.push_back({"asymptotic.json", j.dump(2)});
  r.report = j;
  return r;
}

CommandResult cmd_solve_field(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.L) throw ValidationError("solve-field needs --L");
  const auto geom = cfg.geometry_at(*cfg.L);
  const auto opt = cfg.solve_options();
  CommandResult r;
  json j;
  j["command"] = "solve-field";
  j["config"] = cfg.to_json();
  j["geometry"] = geometry_to_json(geom);

  if (cfg.mode == "trapped") {
    const auto tc = trapped_candidate(geom, opt);
    const auto full = unfold(tc.field, Parity::Even);
    export_field(r, full, "field", cfg.samples_per_ell, "trapped mode");
    j["s21"] = to_json(tc.outgoing_piston);
    j["s22"] = to_json(tc.s22);
    j["tail_decay_rate"] = tc.tail_decay_rate;
    j["diagnostics"] = to_json(tc.diagnostics);
  } else {
    const auto sol = solve_full_field(geom, opt);
    const auto& f = sol.problem.fields.front();
    const auto& left = sol.problem.basis(kLeftPort);
    const GridSpec g = field_grid(f, cfg.samples_per_ell);
    const auto s = eval_on_grid(f, g);
    r.files.push_back({"field.csv", field_csv(g, s)});
    r.files.push_back(
        {"field_re.svg", heatmap_of(g, s, [](cplx v, Point) { return v.real(); }, "Re v")});
    r.files.push_back(
        {"field_im.svg", heatmap_of(g, s, [](cplx v, Point) { return v.imag(); }, "Im v")});
    r.files.push_back({"field_im_scattered.svg",
                       heatmap_of(g, s,
                                  [&](cplx v, Point p) { return (v - left.incoming(0, p)).imag(); },
                                  "Im (v - incident)")});
    const auto sup = nodal_sup(sol);
    j.update(scattering_record(geom, sol.pair));
    j["sup_v"] = sup.sup_v;
    j["sup_re_v_minus_incident"] = sup.sup_re_scattered;
    j["sup_im_v"] = sup.sup_im;
    j["relative_re_v_minus_incident"] = sup.sup_re_scattered / sup.sup_v;
    j["relative_im_v"] = sup.sup_im / sup.sup_v;
  }
  r.files.push_back({"solve_field.json", j.dump(2)});
  r.report = j;
  return r;
}

std::vector<std::string> write_outputs(const std::string& dir, const CommandResult& r) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir + ": " + ec.message());
  std::vector<std::string> paths;
  for (const auto& f : r.files) {
    const auto p = (std::filesystem::path(dir) / f.name).string();
    write_file(p, f.contents);
    paths.push_back(p);
  }
  return paths;
}

}  // namespace waveguide::cli
