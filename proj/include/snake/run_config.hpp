#pragma once
// Experiment orchestration shared by the command-line tool and the tests:
// dataset/config handling, solver dispatch, trace emission.
//
// Size expressions accept a symbolic V for the node count, so the usual
// step rules are expressible verbatim: "0.1V", "V/10", "4V", "V", "250".

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "snake/solver.hpp"

namespace snake {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_scale_expr(const std::string& expr, double num_nodes);
// "inv_n:<scale>" or "inv_sqrt_n:<scale>[:switch=<n>]".
StepSchedule parse_schedule(const std::string& spec, double num_nodes);
// "4x1000" or a comma list "1000,500,500".
std::vector<int> parse_blocks(const std::string& spec);

struct RunConfig {
  enum class Command { Gtf, Inpaint, Lapsys, GenSbm, Bench };

  Command command = Command::Gtf;
  std::string problem;  // bench only: gtf | inpaint | lapsys

  // Graph source: exactly one of graph_path / sbm_blocks.
  std::string graph_path;
  std::string sbm_blocks;
  double p_in = 0.1;
  double p_out = 0.005;
  std::uint64_t sbm_seed = 1;

  // Signal source: CSV file, or per-block levels over an SBM, or a standard
  // Gaussian draw.
  std::string signal_path;
  std::uint64_t signal_seed = 1;
  std::string sbm_levels;  // comma list, one level per block
  double sbm_sigma = 1.0;

  // Inpainting mask.
  std::string mask_path;
  double observed_fraction = 0.5;
  std::uint64_t mask_seed = 1;

  // Laplacian system.
  bool center_b = false;

  std::string lambda = "auto";

  std::string solver = "snake";  // snake | pg-dual | cg
  std::string solvers;           // bench: comma list
  std::string L = "V";
  std::string L_list;            // bench: comma list of L expressions
  std::string schedule;          // empty: per-command default
  std::uint64_t seed = 0;
  long max_outer = 300;
  double max_seconds = std::numeric_limits<double>::infinity();
  long eval_every = 1;
  double tol = 1e-8;             // pg / cg termination
  long solver_max_iters = 1000000;

  std::string out;  // trace path; bench uses it as a prefix
};

// Runs the configured experiment, writes traces, prints the summary line
// "FINAL objective=<v> iters=<n> seconds=<t>" per solver run. Throws
// ConfigError on invalid configuration.
void run_experiment(const RunConfig& config, std::ostream& out);

}  // namespace snake
