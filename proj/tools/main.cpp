#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "logbouss/error.hpp"
#include "logbouss/report.hpp"

using logbouss::cli::RunConfig;

namespace {

void add_ranges(CLI::App* sub, RunConfig& c, bool with_d_t) {
  c.alpha = {"0", "0.5", "1"};
  c.beta = {"0.5", "1"};
  sub->add_option("--alpha", c.alpha, "alpha values or lo:hi:count[:log]")->delimiter(',');
  sub->add_option("--beta", c.beta, "beta values")->delimiter(',');
  sub->add_option("--lambda", c.lambda,
                  "lambda values; default is exp((3 + 2 alpha) / beta) for each pair")
      ->delimiter(',');
  if (with_d_t) {
    c.d = {"1", "2", "3"};
    c.t = {"0.5", "1", "2"};
    sub->add_option("--d", c.d, "dimensions (1, 2 or 3)")->delimiter(',');
    sub->add_option("--t", c.t, "times")->delimiter(',');
  }
}

void add_suite_options(CLI::App* sub, RunConfig& c, bool bernstein, bool commutator) {
  c.alpha = {"0", "0.5", "1"};
  c.beta = {"0.5", "1"};
  c.grids = {"256", "512"};
  sub->add_option("--alpha", c.alpha, "alpha values")->delimiter(',');
  sub->add_option("--beta", c.beta, "beta values")->delimiter(',');
  sub->add_option("--lambda", c.lambda, "lambda values (default: threshold per pair)")->delimiter(',');
  sub->add_option("--grids", c.grids, "grid sizes compared for drift (--grid N means N,2N)")
      ->delimiter(',');
  sub->add_option("--ceiling", c.ceiling, "largest accepted ratio")->capture_default_str();
  sub->add_option("--drift-tolerance", c.drift_tolerance, "largest accepted relative drift")
      ->capture_default_str();
  sub->add_option("--random-fields", c.random_fields, "random band-limited fields in the corpus")
      ->capture_default_str();
  if (bernstein) {
    c.bernstein_p = {"1.5", "2", "3", "4"};
    c.multiplier_p = {"2", "inf"};
    sub->add_option("--bernstein-p", c.bernstein_p, "exponents of the dissipation pairing")->delimiter(',');
    sub->add_option("--multiplier-p", c.multiplier_p, "exponents of the multiplier bound")->delimiter(',');
  }
  if (commutator) {
    c.commutator_p = {"2", "4"};
    c.commutator_r = {"1", "inf"};
    c.epsilon = {"0.1", "0.3", "0.5"};
    sub->add_option("--commutator-p", c.commutator_p, "commutator exponents p")->delimiter(',');
    sub->add_option("--commutator-r", c.commutator_r, "Besov summation exponents r")->delimiter(',');
    sub->add_option("--epsilon", c.epsilon, "regularity gains of the vorticity variant")->delimiter(',');
    sub->add_option("--rho", c.rho, "Lebesgue exponent of the vorticity variant")->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for logarithmically damped Boussinesq flows", "logbouss"};
  app.set_version_flag("--version", logbouss::tool_version());
  app.set_config("--config", "", "TOML or INI file; [subcommand] sections set subcommand options");
  app.require_subcommand(1);

  RunConfig common;
  app.add_option("--out", common.out, "output directory")->capture_default_str();
  app.add_option("--seed", common.seed, "random seed")->capture_default_str();
  app.add_option("--grid", common.grid, "grid size n (n x n points)");
  app.add_flag("--plots", common.plots, "also write SVG plots");
  app.add_flag("--json-only", common.json_only, "write JSON only (no CSV, no SVG)");

  RunConfig kernel;
  RunConfig askey;
  RunConfig simulate;
  RunConfig verify;
  RunConfig bernstein;
  RunConfig commutator;

  auto* k = app.add_subcommand("kernel", "kernel mass, minimum and Askey flags over a parameter matrix");
  add_ranges(k, kernel, true);
  auto* a = app.add_subcommand("askey", "sign conditions on the derivatives of phi");
  add_ranges(a, askey, false);
  askey.t = {"1"};
  a->add_option("--t", askey.t, "times for the profile check")->delimiter(',');

  auto* s = app.add_subcommand("simulate", "run a named simulation preset");
  std::string presets_help = "preset name:";
  for (const auto& [name, what] : logbouss::simulation_presets()) presets_help += "\n  " + name + ": " + what;
  s->add_option("--preset", simulate.preset, presets_help)->capture_default_str();
  s->add_option("--alpha", simulate.alpha, "override alpha");
  s->add_option("--beta", simulate.beta, "override beta");
  s->add_option("--lambda", simulate.lambda, "override lambda");
  s->add_option("--kappa", simulate.kappa, "dissipation coefficient (transport-diffusion presets)");
  s->add_option("--dt", simulate.dt, "time step");
  s->add_option("--t-end", simulate.t_end, "final time");
  s->add_option("--sample-every", simulate.sample_every, "record every this many steps");

  auto* v = app.add_subcommand("verify", "run the inequality suite; exit status 1 when a report fails");
  add_suite_options(v, verify, true, true);
  auto* b = app.add_subcommand("bernstein", "Bernstein-type checks only");
  add_suite_options(b, bernstein, true, false);
  auto* c = app.add_subcommand("commutator", "commutator checks only");
  add_suite_options(c, commutator, false, true);

  for (auto* sub : {k, a, s, v, b, c}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  auto finish = [&](RunConfig cfg, const std::string& name) {
    cfg.subcommand = name;
    cfg.out = common.out;
    cfg.seed = common.seed;
    cfg.grid = common.grid;
    cfg.plots = common.plots;
    cfg.json_only = common.json_only;
    return cfg;
  };

  try {
    if (k->parsed()) return logbouss::cli::cmd_kernel(finish(kernel, "kernel"));
    if (a->parsed()) return logbouss::cli::cmd_askey(finish(askey, "askey"));
    if (s->parsed()) return logbouss::cli::cmd_simulate(finish(simulate, "simulate"));
    if (v->parsed()) return logbouss::cli::cmd_verify(finish(verify, "verify"));
    if (b->parsed()) return logbouss::cli::cmd_verify(finish(bernstein, "bernstein"));
    if (c->parsed()) return logbouss::cli::cmd_verify(finish(commutator, "commutator"));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
