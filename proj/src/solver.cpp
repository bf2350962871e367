#include "snake/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace snake {

double StepSchedule::at(long n) const {
  if (n < 1) throw std::invalid_argument("step schedule: iteration index starts at 1");
  switch (kind) {
    case Kind::InverseN:
      return scale / static_cast<double>(n);
    case Kind::InverseSqrtN:
      if (switch_at > 0 && n > switch_at)
        return scale * std::sqrt(static_cast<double>(switch_at)) / static_cast<double>(n);
      return scale / std::sqrt(static_cast<double>(n));
  }
  throw std::logic_error("step schedule: unknown kind");
}

SnakeSolver::SnakeSolver(const Problem& problem, SolverConfig config)
    : problem_(problem), config_(config), rng_(config.seed) {
  if (config_.budget_L < 1) throw std::invalid_argument("snake: budget L must be >= 1");
  if (!(config_.schedule.scale > 0.0))
    throw std::invalid_argument("snake: schedule scale must be positive");
  if (config_.eval_every < 1) throw std::invalid_argument("snake: eval_every must be >= 1");
  if (config_.max_outer_iterations < 0)
    throw std::invalid_argument("snake: negative iteration budget");
  if (problem_.graph().num_edges() < 1)
    throw std::invalid_argument("snake: the walk graph has no edges");
  if (!problem_.regularizer().prox_supported())
    throw std::invalid_argument("snake: regularizer has no prox");

  z_ = problem_.initial_point();
  if (z_.size() != problem_.graph().num_nodes())
    throw std::invalid_argument("snake: initial point does not match the graph");
  grad_.setZero(z_.size());
  edge_ = rnd_oriented_edge(problem_.graph(), rng_);
  remaining_ = config_.budget_L;
}

void SnakeSolver::segment_step() {
  const Graph& g = problem_.graph();
  const double gamma = config_.schedule.at(n_ + 1);
  const std::int64_t L = config_.budget_L;

  SegmentResult seg = simple_path(g, edge_, remaining_, rng_);

  // Scaled partial gradient step on all supported coordinates, with the
  // gradient refreshed at the current iterate.
  problem_.gradient(z_, grad_);
  const double coef = gamma * static_cast<double>(seg.path.length()) /
                      (static_cast<double>(L) * static_cast<double>(g.num_edges()));
  const auto support = problem_.gradient_support();
  if (support.empty()) {
    z_.noalias() -= coef * grad_;
  } else {
    for (int i : support) z_[i] -= coef * grad_[i];
  }

  // Exact prox along the segment at step gamma/L.
  prox_on_path_in_place(problem_.regularizer(), g, seg.path, z_,
                        gamma / static_cast<double>(L), prox_ws_);

  remaining_ -= seg.path.length();
  last_segment_ = std::move(seg.path);
  if (remaining_ == 0) {
    edge_ = rnd_oriented_edge(g, rng_);
    remaining_ = L;
    ++n_;
  } else {
    edge_ = *seg.next_edge;
  }
}

SolverTrace SnakeSolver::run() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  double eval_seconds = 0.0;
  SolverTrace trace;

  const auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  const auto record = [&](long iter) {
    TraceRecord rec;
    rec.outer_iter = iter;
    rec.wall_seconds = elapsed();
    rec.solve_seconds = rec.wall_seconds - eval_seconds;
    const auto eval_start = clock::now();
    rec.objective = problem_.objective(z_);
    eval_seconds += std::chrono::duration<double>(clock::now() - eval_start).count();
    trace.records.push_back(rec);
  };

  record(0);
  while (n_ < config_.max_outer_iterations && elapsed() < config_.max_wall_seconds) {
    const long target = n_ + 1;
    while (n_ < target) segment_step();
    if (n_ % config_.eval_every == 0) record(n_);
  }
  if (trace.records.back().outer_iter != n_) record(n_);

  trace.final_x = z_;
  trace.outer_iterations = n_;
  trace.wall_seconds = elapsed();
  return trace;
}

double estimate_regularizer(const Graph& g, const Regularizer& reg,
                            const Eigen::Ref<const Eigen::VectorXd>& x, std::int64_t L,
                            long num_samples, std::uint64_t seed, double* std_error) {
  if (num_samples < 1) throw std::invalid_argument("estimate_regularizer: need samples");
  if (L < 1) throw std::invalid_argument("estimate_regularizer: L must be >= 1");
  Rng rng(seed);
  const double scale = static_cast<double>(g.num_edges()) / static_cast<double>(L);
  double sum = 0.0, sum_sq = 0.0;
  for (long s = 0; s < num_samples; ++s) {
    const std::vector<int> walk = random_walk(g, L, rng);
    const double value = scale * evaluate_on_walk(reg, g, walk, x);
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / static_cast<double>(num_samples);
  if (std_error) {
    const double var =
        std::max(0.0, sum_sq / static_cast<double>(num_samples) - mean * mean);
    *std_error = std::sqrt(var / static_cast<double>(num_samples));
  }
  return mean;
}

}  // namespace snake
