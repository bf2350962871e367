#include <doctest.h>

#include <cmath>

#include "snake/problems.hpp"
#include "snake/solver.hpp"
#include "support/oracles.hpp"

using namespace snake;

namespace {

// F == 0 with a chosen regularizer; exposes the pure prox dynamics.
class ProxOnlyProblem final : public Problem {
 public:
  ProxOnlyProblem(const Graph& g, Regularizer reg, Eigen::VectorXd x0)
      : graph_(&g), reg_(std::move(reg)), x0_(std::move(x0)) {}

  const Graph& graph() const override { return *graph_; }
  const Regularizer& regularizer() const override { return reg_; }
  void gradient(const Eigen::VectorXd&, Eigen::VectorXd& grad) const override {
    grad.setZero();
  }
  double objective(const Eigen::VectorXd& x) const override {
    return evaluate(reg_, *graph_, x);
  }
  Eigen::VectorXd initial_point() const override { return x0_; }

 private:
  const Graph* graph_;
  Regularizer reg_;
  Eigen::VectorXd x0_;
};

}  // namespace

TEST_CASE("step schedules") {
  StepSchedule inv{StepSchedule::Kind::InverseN, 10.0, 0};
  CHECK(inv.at(1) == 10.0);
  CHECK(inv.at(4) == 2.5);

  StepSchedule sqrt_sched{StepSchedule::Kind::InverseSqrtN, 10.0, 0};
  CHECK(sqrt_sched.at(4) == doctest::Approx(5.0));

  StepSchedule handover{StepSchedule::Kind::InverseSqrtN, 10.0, 100};
  CHECK(handover.at(100) == doctest::Approx(1.0));
  CHECK(handover.at(101) == doctest::Approx(10.0 * 10.0 / 101.0));
  // continuous at the switch, square-summable beyond it
  CHECK(handover.at(100) == doctest::Approx(10.0 * 10.0 / 100.0));

  CHECK_THROWS_AS(inv.at(0), std::invalid_argument);
}

TEST_CASE("budget conservation within outer iterations") {
  const Graph g = sample_sbm(std::vector<int>{10, 10}, 0.5, 0.1, 3);
  Eigen::VectorXd y = gaussian_signal(g.num_nodes(), 1);
  TrendFilteringProblem problem(g, y, 0.5);
  SolverConfig config;
  config.budget_L = 13;
  config.schedule = {StepSchedule::Kind::InverseN, 2.0, 0};
  config.seed = 5;

  SnakeSolver solver(problem, config);
  for (int outer = 0; outer < 50; ++outer) {
    std::int64_t spent = 0;
    const long n0 = solver.outer_iterations();
    while (solver.outer_iterations() == n0) {
      const std::int64_t before = solver.remaining_budget();
      solver.segment_step();
      spent += solver.last_segment().length();
      if (solver.outer_iterations() == n0)
        CHECK(solver.remaining_budget() == before - solver.last_segment().length());
    }
    CHECK(spent == config.budget_L);
    CHECK(solver.remaining_budget() == config.budget_L);
  }
}

TEST_CASE("with zero gradient, off-path coordinates never move") {
  const Graph g = grid_graph(4, 4);
  Eigen::VectorXd x0 = gaussian_signal(g.num_nodes(), 7);
  ProxOnlyProblem problem(g, Regularizer::tv(), x0);
  SolverConfig config;
  config.budget_L = 6;
  config.schedule = {StepSchedule::Kind::InverseN, 1.0, 0};
  config.seed = 11;

  SnakeSolver solver(problem, config);
  for (int step = 0; step < 200; ++step) {
    const Eigen::VectorXd before = solver.iterate();
    solver.segment_step();
    const Eigen::VectorXd& after = solver.iterate();
    std::vector<bool> on_path(g.num_nodes(), false);
    for (int v : solver.last_segment().nodes) on_path[v] = true;
    for (int v = 0; v < g.num_nodes(); ++v)
      if (!on_path[v]) CHECK(after[v] == before[v]);
  }
}

TEST_CASE("L=1 degenerates to single-edge stochastic forward-backward") {
  // With L=1 every outer iteration is one edge (u,v): gradient step scaled
  // by 1/|E| on all coordinates, then the two-point prox at gamma. Replay
  // the identical RNG stream to predict the iterates exactly.
  const Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const Eigen::VectorXd y = gaussian_signal(3, 9);
  const double lambda = 0.7;
  TrendFilteringProblem problem(g, y, lambda);
  SolverConfig config;
  config.budget_L = 1;
  config.schedule = {StepSchedule::Kind::InverseN, 1.5, 0};
  config.seed = 123;

  SnakeSolver solver(problem, config);

  Rng replay(123);
  Eigen::VectorXd z = y;
  Eigen::VectorXd grad(3);
  for (long n = 0; n < 40; ++n) {
    const auto edge = rnd_oriented_edge(g, replay);
    replay.next_below(g.degree(edge.second));  // the unused pivot draw
    const double gamma = 1.5 / static_cast<double>(n + 1);
    const double coef = gamma * 1.0 / (1.0 * 3.0);  // len/(L|E|) with len=L=1
    grad = z - y;
    z.noalias() -= coef * grad;
    Eigen::VectorXd pair(2);
    pair << z[edge.first], z[edge.second];
    const std::vector<double> w{lambda};
    const Eigen::VectorXd proxed = prox1d::tv_prox_path(pair, gamma, w);
    z[edge.first] = proxed[0];
    z[edge.second] = proxed[1];

    solver.segment_step();
    CHECK(solver.outer_iterations() == n + 1);
    CHECK((solver.iterate() - z).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("fixed-seed transcript on the 2-edge path graph") {
  // On 0-1-2 every segment is forced once its start edge is known, so the
  // whole iterate sequence is a deterministic function of the RNG draws,
  // which we replay independently.
  const Graph g = path_graph(3);
  const Eigen::VectorXd y = gaussian_signal(3, 21);
  const double lambda = 0.4;
  TrendFilteringProblem problem(g, y, lambda);
  SolverConfig config;
  config.budget_L = 4;
  config.schedule = {StepSchedule::Kind::InverseN, 2.0, 0};
  config.seed = 77;

  SnakeSolver solver(problem, config);

  Rng replay(77);
  Eigen::VectorXd z = y;
  const double m = static_cast<double>(g.num_edges());
  long n = 0;
  std::int64_t remaining = config.budget_L;
  OrientedEdge edge = rnd_oriented_edge(g, replay);
  for (int step = 0; step < 60; ++step) {
    // replicate simple_path by hand
    std::vector<int> c{edge.first, edge.second};
    int w = uniform_neighbor(g, c.back(), replay);
    while (std::find(c.begin(), c.end(), w) == c.end() &&
           static_cast<std::int64_t>(c.size()) - 1 < remaining) {
      c.push_back(w);
      w = uniform_neighbor(g, w, replay);
    }
    const auto len = static_cast<double>(c.size()) - 1;
    const double gamma = 2.0 / static_cast<double>(n + 1);
    z -= gamma * len / (config.budget_L * m) * (z - y);
    Eigen::VectorXd vals(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) vals[k] = z[c[k]];
    const std::vector<double> wts(c.size() - 1, lambda);
    const Eigen::VectorXd proxed =
        prox1d::tv_prox_path(vals, gamma / config.budget_L, wts);
    for (std::size_t k = 0; k < c.size(); ++k) z[c[k]] = proxed[k];
    remaining -= static_cast<std::int64_t>(len);
    if (remaining == 0) {
      edge = rnd_oriented_edge(g, replay);
      remaining = config.budget_L;
      ++n;
    } else {
      edge = {c.back(), w};
    }

    solver.segment_step();
    REQUIRE((solver.iterate() - z).lpNorm<Eigen::Infinity>() == 0.0);
    REQUIRE(solver.outer_iterations() == n);
    REQUIRE(solver.remaining_budget() == remaining);
    REQUIRE(solver.current_edge() == edge);
  }
}

TEST_CASE("same seed gives bit-identical runs") {
  const Graph g = sample_sbm(std::vector<int>{15, 15}, 0.4, 0.05, 2);
  const Eigen::VectorXd y = gaussian_signal(g.num_nodes(), 3);
  TrendFilteringProblem problem(g, y, 0.3);
  SolverConfig config;
  config.budget_L = g.num_nodes();
  config.schedule = {StepSchedule::Kind::InverseN, 3.0, 0};
  config.seed = 31;
  config.max_outer_iterations = 25;

  const SolverTrace a = SnakeSolver(problem, config).run();
  const SolverTrace b = SnakeSolver(problem, config).run();
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].outer_iter == b.records[i].outer_iter);
    CHECK(a.records[i].objective == b.records[i].objective);
  }
  CHECK((a.final_x - b.final_x).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("trace timestamps are nondecreasing and cadence is honored") {
  const Graph g = grid_graph(5, 5);
  const Eigen::VectorXd y = gaussian_signal(g.num_nodes(), 5);
  TrendFilteringProblem problem(g, y, 0.2);
  SolverConfig config;
  config.budget_L = 10;
  config.schedule = {StepSchedule::Kind::InverseN, 2.0, 0};
  config.max_outer_iterations = 30;
  config.eval_every = 7;

  const SolverTrace trace = SnakeSolver(problem, config).run();
  REQUIRE(!trace.records.empty());
  CHECK(trace.records.front().outer_iter == 0);
  CHECK(trace.records.back().outer_iter == 30);
  for (std::size_t i = 1; i < trace.records.size(); ++i) {
    CHECK(trace.records[i].wall_seconds >= trace.records[i - 1].wall_seconds);
    if (i + 1 < trace.records.size())
      CHECK(trace.records[i].outer_iter % 7 == 0);
  }
}

TEST_CASE("estimator unbiasedness: exact enumeration on small graphs") {
  Rng rng(63);
  for (const Graph& g : testing::small_graph_zoo()) {
    if (g.num_edges() == 0) continue;
    Eigen::VectorXd x(g.num_nodes());
    for (int i = 0; i < g.num_nodes(); ++i) x[i] = rng.next_gaussian();
    for (const Regularizer& reg : {Regularizer::tv(), Regularizer::laplacian()}) {
      const double whole = evaluate(reg, g, x);
      for (int L = 1; L <= 4; ++L) {
        const double expectation = testing::exact_walk_expectation(g, reg, x, L);
        const double scaled = expectation * static_cast<double>(g.num_edges()) / L;
        CHECK(std::abs(scaled - whole) <= 1e-10 * std::max(1.0, std::abs(whole)));
      }
    }
  }
}

TEST_CASE("estimate_regularizer: constant signals have zero variance") {
  const Graph g = sample_sbm(std::vector<int>{10, 10}, 0.4, 0.1, 9);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(g.num_nodes(), 2.5);
  double std_error = -1.0;
  const double est = estimate_regularizer(g, Regularizer::tv(), x, 8, 200, 4, &std_error);
  CHECK(est == 0.0);
  CHECK(std_error == 0.0);
}

TEST_CASE("estimate_regularizer concentrates at 1e5 samples") {
  const Graph g = sample_sbm(std::vector<int>{10, 10}, 0.5, 0.1, 12);
  REQUIRE(g.num_nodes() == 20);
  const Eigen::VectorXd x = gaussian_signal(g.num_nodes(), 8);
  for (const Regularizer& reg : {Regularizer::tv(), Regularizer::laplacian()}) {
    const double truth = evaluate(reg, g, x);
    double std_error = 0.0;
    const double est = estimate_regularizer(g, reg, x, 8, 100000, 2024, &std_error);
    CHECK(std::abs(est - truth) / truth < 0.01);
    CHECK(std_error < 0.01 * truth);
  }
}

TEST_CASE("per-iteration composite estimate is unbiased for (F + R)/|E|") {
  // sum_i [f_i + g_i] at fixed x over one outer iteration equals
  // F(x)/|E| + R(x, phi_walk)/L; its mean over walks is (F(x)+R(x))/|E|.
  const Graph g = sample_sbm(std::vector<int>{10, 10}, 0.5, 0.1, 12);
  const Eigen::VectorXd y = gaussian_signal(g.num_nodes(), 1);
  const Eigen::VectorXd x = gaussian_signal(g.num_nodes(), 2);
  const double lambda = 0.8;
  TrendFilteringProblem problem(g, y, lambda);
  const Regularizer& reg = problem.regularizer();

  const double f_whole = 0.5 * (x - y).squaredNorm();
  const double r_whole = evaluate(reg, g, x);
  const double target = (f_whole + r_whole) / static_cast<double>(g.num_edges());

  const std::int64_t L = 8;
  const long samples = 100000;
  Rng rng(777);
  double acc = 0.0;
  for (long s = 0; s < samples; ++s) {
    OrientedEdge e = rnd_oriented_edge(g, rng);
    std::int64_t remaining = L;
    double composite = 0.0;
    while (remaining > 0) {
      const SegmentResult seg = simple_path(g, e, remaining, rng);
      composite +=
          static_cast<double>(seg.path.length()) /
              (static_cast<double>(L) * static_cast<double>(g.num_edges())) * f_whole +
          evaluate_on_path(reg, g, seg.path, x) / static_cast<double>(L);
      remaining -= seg.path.length();
      if (remaining > 0) e = *seg.next_edge;
    }
    acc += composite;
  }
  const double mean = acc / samples;
  CHECK(std::abs(mean - target) / target < 0.01);
}

TEST_CASE("solver configuration validation") {
  const Graph g = path_graph(4);
  const Eigen::VectorXd y = gaussian_signal(4, 1);
  TrendFilteringProblem problem(g, y, 0.5);

  SolverConfig config;
  config.budget_L = 0;
  CHECK_THROWS_AS(SnakeSolver(problem, config), std::invalid_argument);

  config.budget_L = 2;
  config.schedule.scale = -1.0;
  CHECK_THROWS_AS(SnakeSolver(problem, config), std::invalid_argument);

  const Graph edgeless = sample_sbm(std::vector<int>{3}, 0.0, 0.0, 1);
  const Eigen::VectorXd y3 = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(TrendFilteringProblem(edgeless, y3, 0.5), std::invalid_argument);
}
