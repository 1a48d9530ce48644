#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "waveguide/errors.hpp"
#include "waveguide/log.hpp"

using namespace waveguide;

namespace {

// Flag values are staged here and copied onto the config only when given,
// so that a config file can supply the rest.
struct Flags {
  double k = 0, L = 0, h = 0, margin = 0, step = 0, tol = 0;
  std::string geometry, out, config, target, mode, log_level = "info";
  std::vector<double> heights, range;
  int dtn = 0, threads = 0, per_ell = 0;
  unsigned seed = 0;
  bool gate = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its values");
  sub->add_option("--k", f.k, "wavenumber in (0, pi), default 0.8 pi");
  sub->add_option("--geometry", f.geometry, "omega | staircase");
  sub->add_option("--L", f.L, "branch height");
  sub->add_option("--heights", f.heights, "staircase tail heights, ending at 1");
  sub->add_option("--h", f.h, "mesh size (default ell/20)");
  sub->add_option("--dtn-terms", f.dtn, "modes kept in each port condition (default 15)");
  sub->add_option("--range", f.range, "L range: lo hi")->expected(2);
  sub->add_option("--step", f.step, "sweep step in L");
  sub->add_option("--out", f.out, "output directory (default $WAVEGUIDE_OUT_DIR or ./out)");
  sub->add_option("--tol", f.tol, "peak refinement tolerance in L (default 1e-4)");
  sub->add_option("--margin-factor", f.margin, "scale of the truncation margins (default 1)");
  sub->add_option("--threads", f.threads, "worker threads (0: all cores)");
  sub->add_option("--seed", f.seed, "recorded in reports");
  sub->add_option("--samples-per-ell", f.per_ell, "field grid density (default 10)");
  sub->add_flag("--gate", f.gate, "re-check refined peaks on a once-refined mesh");
  sub->add_option("--log-level", f.log_level, "debug | info | warn | error | off");
}

cli::RunConfig resolve(CLI::App* sub, const Flags& f) {
  cli::RunConfig c;
  c.out_dir = cli::default_out_dir();
  if (!f.config.empty()) c.merge_json(json::parse(read_file(f.config)));
  auto given = [&](const char* name) {
    const auto* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--k")) c.k = f.k;
  if (given("--geometry")) c.geometry = f.geometry;
  if (given("--L")) c.L = f.L;
  if (given("--heights")) c.heights = f.heights;
  if (given("--h")) c.h = f.h;
  if (given("--dtn-terms")) c.dtn_terms = f.dtn;
  if (given("--range")) c.range = std::make_pair(f.range.at(0), f.range.at(1));
  if (given("--step")) c.step = f.step;
  if (given("--out")) c.out_dir = f.out;
  if (given("--tol")) c.tol = f.tol;
  if (given("--margin-factor")) c.margin_factor = f.margin;
  if (given("--threads")) c.threads = f.threads;
  if (given("--seed")) c.seed = f.seed;
  if (given("--samples-per-ell")) c.samples_per_ell = f.per_ell;
  if (given("--target")) c.target = f.target;
  if (given("--mode")) c.mode = f.mode;
  if (f.gate) c.gate = true;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering, invisibility and trapped modes in symmetric staircase waveguides"};
  app.require_subcommand(1);
  Flags f;

  struct Cmd {
    const char* name;
    const char* help;
    cli::CommandResult (*run)(const cli::RunConfig&);
  };
  const Cmd cmds[] = {
      {"sweep-invisibility", "sweep T(L) or R(L), locate and refine T = 1 (or R = 1)",
       cli::cmd_sweep_invisibility},
      {"sweep-trapped", "sweep the augmented matrix, locate s22 = -1 and export trapped modes",
       cli::cmd_sweep_trapped},
      {"limit-matrices", "limit scattering matrices and their identity residuals",
       cli::cmd_limit_matrices},
      {"asymptotic-compare", "direct versus asymptotic R(L) and s22(L)",
       cli::cmd_asymptotic_compare},
      {"solve-field", "one solve at --L with field exports", cli::cmd_solve_field},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->set_help_flag("--help", "print this help and exit");  // -h is the mesh size
    add_common(sub, f);
    subs.push_back(sub);
  }
  subs[0]->add_option("--target", f.target, "T (default) or R");
  subs[4]->add_option("--mode", f.mode, "full (piston incident) or trapped");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kValidation;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      log::set_level(log::parse_level(f.log_level));
      const auto cfg = resolve(subs[i], f);
      log::info("command_start", {{"command", cmds[i].name}, {"config", cfg.to_json()}});
      const auto result = cmds[i].run(cfg);
      const auto paths = cli::write_outputs(cfg.out_dir, result);
      for (const auto& p : paths) std::cout << p << "\n";
      std::cout << result.report.dump(2) << "\n";
      log::info("command_done", {{"command", cmds[i].name}, {"files", paths.size()}});
      return cli::kOk;
    } catch (const ValidationError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cli::kValidation;
    } catch (const json::exception& e) {
      std::cerr << "error: config: " << e.what() << "\n";
      return cli::kValidation;
    } catch (const ExceptionalCaseError& e) {
      std::cerr << "exceptional case (" << to_string(e.which()) << "): " << e.what() << "\n";
      return cli::kExceptional;
    } catch (const SolverError& e) {
      std::cerr << "solver failure: " << e.what() << "\n";
      return cli::kSolver;
    }
  }
  return cli::kValidation;
}
