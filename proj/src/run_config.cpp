#include "snake/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "snake/baselines.hpp"
#include "snake/problems.hpp"
#include "snake/trace_io.hpp"

namespace snake {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, sep)) parts.push_back(tok);
  return parts;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + ": \"" + s + "\"");
  }
}

}  // namespace

double parse_scale_expr(const std::string& expr, double num_nodes) {
  if (expr.empty()) throw ConfigError("empty size expression");
  std::string s = expr;
  double divisor = 1.0;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    divisor = parse_number(s.substr(slash + 1), "divisor");
    if (divisor == 0.0) throw ConfigError("division by zero in \"" + expr + "\"");
    s = s.substr(0, slash);
  }
  double value;
  if (const auto v = s.find_first_of("Vv"); v != std::string::npos) {
    if (v != s.size() - 1) throw ConfigError("malformed size expression \"" + expr + "\"");
    const std::string coef = s.substr(0, v);
    value = (coef.empty() ? 1.0 : parse_number(coef, "coefficient")) * num_nodes;
  } else if (s == "nodes") {
    value = num_nodes;
  } else {
    value = parse_number(s, "size expression");
  }
  return value / divisor;
}

StepSchedule parse_schedule(const std::string& spec, double num_nodes) {
  const auto parts = split(spec, ':');
  if (parts.size() < 2 || parts.size() > 3)
    throw ConfigError("schedule must look like inv_n:0.1V or inv_sqrt_n:5V:switch=100");
  StepSchedule schedule;
  if (parts[0] == "inv_n") {
    schedule.kind = StepSchedule::Kind::InverseN;
  } else if (parts[0] == "inv_sqrt_n") {
    schedule.kind = StepSchedule::Kind::InverseSqrtN;
  } else {
    throw ConfigError("unknown schedule kind \"" + parts[0] + "\"");
  }
  schedule.scale = parse_scale_expr(parts[1], num_nodes);
  if (!(schedule.scale > 0.0)) throw ConfigError("schedule scale must be positive");
  if (parts.size() == 3) {
    if (schedule.kind != StepSchedule::Kind::InverseSqrtN)
      throw ConfigError("switch point applies to inv_sqrt_n only");
    if (parts[2].rfind("switch=", 0) != 0)
      throw ConfigError("expected switch=<n>, got \"" + parts[2] + "\"");
    schedule.switch_at = static_cast<long>(parse_number(parts[2].substr(7), "switch point"));
    if (schedule.switch_at < 1) throw ConfigError("switch point must be >= 1");
  }
  return schedule;
}

std::vector<int> parse_blocks(const std::string& spec) {
  std::vector<int> blocks;
  if (const auto x = spec.find('x'); x != std::string::npos && spec.find(',') == std::string::npos) {
    const long count = static_cast<long>(parse_number(spec.substr(0, x), "block count"));
    const long size = static_cast<long>(parse_number(spec.substr(x + 1), "block size"));
    if (count < 1 || size < 1) throw ConfigError("blocks must be positive in \"" + spec + "\"");
    blocks.assign(count, static_cast<int>(size));
  } else {
    for (const std::string& tok : split(spec, ',')) {
      const long size = static_cast<long>(parse_number(tok, "block size"));
      if (size < 1) throw ConfigError("blocks must be positive in \"" + spec + "\"");
      blocks.push_back(static_cast<int>(size));
    }
  }
  if (blocks.empty()) throw ConfigError("no blocks in \"" + spec + "\"");
  return blocks;
}

namespace {

Graph build_graph(const RunConfig& cfg) {
  const bool from_file = !cfg.graph_path.empty();
  const bool from_sbm = !cfg.sbm_blocks.empty();
  if (from_file == from_sbm)
    throw ConfigError("exactly one graph source required (--graph or --blocks)");
  if (from_file) {
    try {
      return load_edge_list_file(cfg.graph_path);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const auto blocks = parse_blocks(cfg.sbm_blocks);
  try {
    return sample_sbm(blocks, cfg.p_in, cfg.p_out, cfg.sbm_seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Eigen::VectorXd build_signal(const RunConfig& cfg, const Graph& g) {
  if (!cfg.signal_path.empty()) {
    std::ifstream in(cfg.signal_path);
    if (!in) throw ConfigError("cannot open signal file: " + cfg.signal_path);
    return load_signal_csv(in, g.num_nodes());
  }
  if (!cfg.sbm_levels.empty()) {
    if (cfg.sbm_blocks.empty())
      throw ConfigError("--levels requires an SBM graph (--blocks)");
    const auto blocks = parse_blocks(cfg.sbm_blocks);
    std::vector<double> levels;
    for (const std::string& tok : split(cfg.sbm_levels, ','))
      levels.push_back(parse_number(tok, "level"));
    return sbm_signal(blocks, levels, cfg.sbm_sigma, cfg.signal_seed);
  }
  return gaussian_signal(g.num_nodes(), cfg.signal_seed);
}

SolverConfig snake_config(const RunConfig& cfg, const Graph& walk_graph,
                          const std::string& L_expr, const std::string& default_schedule) {
  SolverConfig sc;
  const double V = static_cast<double>(walk_graph.num_nodes());
  sc.budget_L = static_cast<std::int64_t>(std::llround(parse_scale_expr(L_expr, V)));
  if (sc.budget_L < 1) throw ConfigError("walk budget L must be >= 1");
  sc.schedule =
      parse_schedule(cfg.schedule.empty() ? default_schedule : cfg.schedule, V);
  sc.seed = cfg.seed;
  sc.max_outer_iterations = cfg.max_outer;
  sc.max_wall_seconds = cfg.max_seconds;
  sc.eval_every = cfg.eval_every;
  return sc;
}

void print_summary(std::ostream& out, double objective, long iters, double seconds) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "FINAL objective=%.17g iters=%ld seconds=%.6g\n", objective,
                iters, seconds);
  out << buf;
}

std::string trace_path(const RunConfig& cfg, const std::string& suffix) {
  if (cfg.out.empty()) return {};
  if (suffix.empty()) return cfg.out;
  std::string base = cfg.out;
  std::string ext;
  if (const auto dot = base.rfind('.'); dot != std::string::npos && dot > base.rfind('/')) {
    ext = base.substr(dot);
    base = base.substr(0, dot);
  }
  return base + "_" + suffix + ext;
}

void emit(const RunConfig& cfg, const std::string& suffix,
          std::span<const TraceRecord> records, std::ostream& out) {
  const std::string path = trace_path(cfg, suffix);
  if (!path.empty()) {
    write_trace_csv_file(path, records);
    out << "trace: " << path << "\n";
  }
}

std::string resolve_problem_kind(const RunConfig& cfg) {
  switch (cfg.command) {
    case RunConfig::Command::Gtf:
      return "gtf";
    case RunConfig::Command::Inpaint:
      return "inpaint";
    case RunConfig::Command::Lapsys:
      return "lapsys";
    case RunConfig::Command::Bench:
      if (cfg.problem != "gtf" && cfg.problem != "inpaint" && cfg.problem != "lapsys")
        throw ConfigError("bench --problem must be gtf, inpaint or lapsys");
      return cfg.problem;
    default:
      throw ConfigError("no problem for this command");
  }
}

struct ProblemBundle {
  Eigen::VectorXd y;
  std::unique_ptr<Problem> problem;
  TrendFilteringProblem* gtf = nullptr;
  InpaintingProblem* inpaint = nullptr;
  LaplacianSystemProblem* lapsys = nullptr;
  std::string default_schedule;
};

ProblemBundle build_problem(const RunConfig& cfg, const Graph& g, std::ostream& out) {
  ProblemBundle bundle;
  const std::string kind = resolve_problem_kind(cfg);
  bundle.y = build_signal(cfg, g);
  if (kind == "gtf") {
    const double lambda = cfg.lambda == "auto"
                              ? calibrate_lambda(g)
                              : parse_number(cfg.lambda, "lambda");
    auto p = std::make_unique<TrendFilteringProblem>(g, bundle.y, lambda);
    bundle.gtf = p.get();
    bundle.problem = std::move(p);
    bundle.default_schedule = "inv_n:V/10";
  } else if (kind == "inpaint") {
    std::vector<bool> observed;
    if (!cfg.mask_path.empty()) {
      std::ifstream in(cfg.mask_path);
      if (!in) throw ConfigError("cannot open mask file: " + cfg.mask_path);
      observed = load_mask_csv(in, g.num_nodes());
    } else {
      observed = random_mask(g.num_nodes(), cfg.observed_fraction, cfg.mask_seed);
    }
    auto p = std::make_unique<InpaintingProblem>(g, bundle.y, observed, &out);
    bundle.inpaint = p.get();
    bundle.problem = std::move(p);
    bundle.default_schedule = "inv_n:V/10";
  } else {
    auto p = std::make_unique<LaplacianSystemProblem>(g, bundle.y, cfg.center_b);
    bundle.lapsys = p.get();
    bundle.problem = std::move(p);
    bundle.default_schedule = "inv_n:V/2";
  }
  return bundle;
}

void run_one_solver(const RunConfig& cfg, const Graph& g, ProblemBundle& bundle,
                    const std::string& solver, const std::string& L_expr,
                    const std::string& suffix, std::ostream& out) {
  if (solver == "snake") {
    if (bundle.inpaint && !bundle.inpaint->solvable_by_walks()) {
      // No unobserved-to-unobserved edge: the boundary terms alone decide.
      const Eigen::VectorXd x = bundle.inpaint->boundary_only_solution();
      print_summary(out, bundle.problem->objective(x), 0, 0.0);
      return;
    }
    const Graph& walk_graph = bundle.problem->graph();
    SolverConfig sc = snake_config(cfg, walk_graph, L_expr, bundle.default_schedule);
    SnakeSolver solver_run(*bundle.problem, sc);
    const SolverTrace trace = solver_run.run();
    emit(cfg, suffix, trace.records, out);
    print_summary(out, trace.records.back().objective, trace.outer_iterations,
                  trace.wall_seconds);
  } else if (solver == "pg-dual") {
    if (!bundle.gtf) throw ConfigError("solver pg-dual applies to the gtf problem only");
    const auto result =
        pg_dual_tv(g, bundle.gtf->data(), bundle.gtf->lambda(), cfg.solver_max_iters,
                   cfg.tol, nullptr, std::max<long>(1, cfg.eval_every));
    emit(cfg, suffix, result.trace, out);
    print_summary(out, result.trace.back().objective, result.iterations,
                  result.trace.back().wall_seconds);
  } else if (solver == "cg") {
    if (bundle.inpaint) {
      InpaintingProblem& ip = *bundle.inpaint;
      const auto apply = [&ip](const Eigen::VectorXd& v, Eigen::VectorXd& r) {
        ip.apply_harmonic_system(v, r);
      };
      const auto metric = [&ip](const Eigen::VectorXd& v) { return ip.objective(v); };
      const auto result = conjugate_gradient(
          apply, ip.harmonic_rhs(), ip.initial_point(), cfg.tol, cfg.solver_max_iters,
          metric, std::max<long>(1, cfg.eval_every));
      emit(cfg, suffix, result.trace, out);
      print_summary(out, ip.objective(result.x), result.iterations,
                    result.trace.back().wall_seconds);
    } else if (bundle.lapsys) {
      LaplacianSystemProblem& lp = *bundle.lapsys;
      const auto apply = [&lp](const Eigen::VectorXd& v, Eigen::VectorXd& r) {
        lp.apply_laplacian(v, r);
      };
      const auto metric = [&lp](const Eigen::VectorXd& v) { return lp.residual_norm(v); };
      const auto result = conjugate_gradient(
          apply, lp.rhs(), lp.initial_point(), cfg.tol, cfg.solver_max_iters, metric,
          std::max<long>(1, cfg.eval_every));
      emit(cfg, suffix, result.trace, out);
      print_summary(out, lp.residual_norm(result.x), result.iterations,
                    result.trace.back().wall_seconds);
    } else {
      throw ConfigError("solver cg applies to inpaint and lapsys problems only");
    }
  } else {
    throw ConfigError("unknown solver \"" + solver + "\"");
  }
}

void run_gen_sbm(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sbm_blocks.empty()) throw ConfigError("gen-sbm requires --blocks");
  if (cfg.out.empty()) throw ConfigError("gen-sbm requires --out");
  const auto blocks = parse_blocks(cfg.sbm_blocks);
  const Graph g = sample_sbm(blocks, cfg.p_in, cfg.p_out, cfg.sbm_seed);
  std::ofstream file(cfg.out);
  if (!file) throw ConfigError("cannot open output file: " + cfg.out);
  write_edge_list(file, g);
  out << "wrote " << cfg.out << ": " << g.num_nodes() << " nodes, " << g.num_edges()
      << " edges\n";
}

}  // namespace

void run_experiment(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == RunConfig::Command::GenSbm) {
    run_gen_sbm(cfg, out);
    return;
  }

  const Graph g = build_graph(cfg);
  ProblemBundle bundle = build_problem(cfg, g, out);

  if (cfg.command == RunConfig::Command::Bench) {
    const auto solver_list = split(cfg.solvers.empty() ? "snake" : cfg.solvers, ',');
    const auto L_values = cfg.L_list.empty() ? std::vector<std::string>{cfg.L}
                                             : split(cfg.L_list, ',');
    for (const std::string& solver : solver_list) {
      if (solver == "snake" && L_values.size() > 1) {
        for (const std::string& L_expr : L_values) {
          const double V = static_cast<double>(bundle.problem->graph().num_nodes());
          const long L = std::llround(parse_scale_expr(L_expr, V));
          out << "run: snake L=" << L << "\n";
          run_one_solver(cfg, g, bundle, solver, L_expr, "snake_L" + std::to_string(L), out);
        }
      } else {
        out << "run: " << solver << "\n";
        run_one_solver(cfg, g, bundle, solver, L_values.front(), solver, out);
      }
    }
    return;
  }

  run_one_solver(cfg, g, bundle, cfg.solver, cfg.L, "", out);
}

}  // namespace snake
