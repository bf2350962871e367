// Command-line front end: gtf / inpaint / lapsys experiments, SBM generation,
// and multi-solver benches. All heavy lifting lives in the library; this
// file only maps flags onto a RunConfig.

#include <iostream>

#include <CLI11.hpp>

#include "snake/run_config.hpp"

namespace {

void add_graph_flags(CLI::App* cmd, snake::RunConfig& cfg) {
  cmd->add_option("--graph", cfg.graph_path, "edge-list file (SNAP format: \"u v\" per line)");
  cmd->add_option("--blocks", cfg.sbm_blocks, "SBM blocks, e.g. 4x1000 or 500,500");
  cmd->add_option("--p-in", cfg.p_in, "SBM within-block edge probability");
  cmd->add_option("--p-out", cfg.p_out, "SBM cross-block edge probability");
  cmd->add_option("--sbm-seed", cfg.sbm_seed, "SBM draw seed");
}

void add_signal_flags(CLI::App* cmd, snake::RunConfig& cfg) {
  cmd->add_option("--signal", cfg.signal_path, "signal CSV (header node,value)");
  cmd->add_option("--signal-seed", cfg.signal_seed, "seed for the Gaussian signal draw");
  cmd->add_option("--levels", cfg.sbm_levels, "per-block signal levels, e.g. 0,1,2,3");
  cmd->add_option("--sigma", cfg.sbm_sigma, "noise level for --levels signals");
}

void add_solver_flags(CLI::App* cmd, snake::RunConfig& cfg) {
  cmd->add_option("--L", cfg.L, "walk budget per outer iteration (accepts V, V/10, 4V, nodes)");
  cmd->add_option("--schedule", cfg.schedule,
                  "step schedule, e.g. inv_n:0.1V or inv_sqrt_n:0.2V:switch=500");
  cmd->add_option("--seed", cfg.seed, "solver seed");
  cmd->add_option("--max-iters", cfg.max_outer, "outer iteration cap");
  cmd->add_option("--max-seconds", cfg.max_seconds, "wall-time cap in seconds");
  cmd->add_option("--eval-every", cfg.eval_every, "outer iterations between evaluations");
  cmd->add_option("--tol", cfg.tol, "pg/cg termination tolerance");
  cmd->add_option("--baseline-max-iters", cfg.solver_max_iters, "pg/cg iteration cap");
  cmd->add_option("--out", cfg.out, "trace CSV path (bench: prefix)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic proximal gradient over random simple paths on graphs"};
  app.require_subcommand(1);
  snake::RunConfig cfg;

  CLI::App* gtf = app.add_subcommand("gtf", "graph trend filtering (TV-regularized denoising)");
  add_graph_flags(gtf, cfg);
  add_signal_flags(gtf, cfg);
  gtf->add_option("--lambda", cfg.lambda, "TV weight, or \"auto\" for the Gaussian calibration");
  gtf->add_option("--solver", cfg.solver, "snake | pg-dual");
  add_solver_flags(gtf, cfg);

  CLI::App* inpaint = app.add_subcommand("inpaint", "harmonic inpainting of a partial signal");
  add_graph_flags(inpaint, cfg);
  add_signal_flags(inpaint, cfg);
  inpaint->add_option("--mask", cfg.mask_path, "mask CSV (header node,observed)");
  inpaint->add_option("--observed-fraction", cfg.observed_fraction,
                      "fraction of observed nodes for the random mask");
  inpaint->add_option("--mask-seed", cfg.mask_seed, "random mask seed");
  inpaint->add_option("--solver", cfg.solver, "snake | cg");
  add_solver_flags(inpaint, cfg);

  CLI::App* lapsys = app.add_subcommand("lapsys", "solve L x = b through the regularized form");
  add_graph_flags(lapsys, cfg);
  add_signal_flags(lapsys, cfg);
  lapsys->add_flag("--center", cfg.center_b, "shift b to zero mean instead of rejecting it");
  lapsys->add_option("--solver", cfg.solver, "snake | cg");
  add_solver_flags(lapsys, cfg);

  CLI::App* gen = app.add_subcommand("gen-sbm", "sample an SBM graph and write its edge list");
  gen->add_option("--blocks", cfg.sbm_blocks, "blocks, e.g. 4x1000")->required();
  gen->add_option("--p-in", cfg.p_in, "within-block edge probability");
  gen->add_option("--p-out", cfg.p_out, "cross-block edge probability");
  gen->add_option("--seed", cfg.sbm_seed, "draw seed");
  gen->add_option("--out", cfg.out, "output edge-list path")->required();

  CLI::App* bench = app.add_subcommand("bench", "run several solvers on one instance");
  bench->add_option("--problem", cfg.problem, "gtf | inpaint | lapsys")->required();
  add_graph_flags(bench, cfg);
  add_signal_flags(bench, cfg);
  bench->add_option("--lambda", cfg.lambda, "TV weight for gtf");
  bench->add_option("--mask", cfg.mask_path, "mask CSV for inpaint");
  bench->add_option("--observed-fraction", cfg.observed_fraction, "observed fraction");
  bench->add_option("--mask-seed", cfg.mask_seed, "random mask seed");
  bench->add_flag("--center", cfg.center_b, "center b for lapsys");
  bench->add_option("--solvers", cfg.solvers, "comma list: snake,pg-dual,cg");
  bench->add_option("--L-list", cfg.L_list, "comma list of walk budgets, e.g. 10,V/10,V,4V");
  add_solver_flags(bench, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (gtf->parsed()) cfg.command = snake::RunConfig::Command::Gtf;
  if (inpaint->parsed()) cfg.command = snake::RunConfig::Command::Inpaint;
  if (lapsys->parsed()) cfg.command = snake::RunConfig::Command::Lapsys;
  if (gen->parsed()) cfg.command = snake::RunConfig::Command::GenSbm;
  if (bench->parsed()) cfg.command = snake::RunConfig::Command::Bench;

  try {
    snake::run_experiment(cfg, std::cout);
  } catch (const snake::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n(run with --help for usage)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
