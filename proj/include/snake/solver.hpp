#pragma once
// The Snake outer loop: stream simple paths out of a budgeted random walk,
// apply scaled partial gradient steps, and take the exact 1D prox along
// each segment.
//
// One outer iteration spends a walk budget of L edges. Each segment c
// updates the iterate on all coordinates by the scaled gradient step and
// then overwrites the path coordinates with the 1D prox:
//
//     z <- Prox1D(z - gamma_n * len(c)/(L|E|) * grad F(z),  c,  gamma_n/L)
//
// gamma_n stays constant until the budget empties; the gradient is
// recomputed at every segment. When a segment ends on a repeated node, the
// next segment starts from the (last node, pivot) edge; when the budget
// empties, a fresh degree-proportional edge is drawn and n advances.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "snake/graph.hpp"
#include "snake/regularizers.hpp"
#include "snake/rng.hpp"
#include "snake/walks.hpp"

namespace snake {

struct StepSchedule {
  enum class Kind { InverseN, InverseSqrtN };

  Kind kind = Kind::InverseN;
  double scale = 1.0;  // c in gamma_n = c/n or c/sqrt(n)
  // For InverseSqrtN only: past this iteration the sequence hands over to
  // scale*sqrt(switch_at)/n, which is square-summable; 0 means never.
  long switch_at = 0;

  double at(long n) const;  // n >= 1
};

struct SolverConfig {
  std::int64_t budget_L = 1;
  StepSchedule schedule;
  std::uint64_t seed = 0;
  long max_outer_iterations = 100;
  double max_wall_seconds = std::numeric_limits<double>::infinity();
  long eval_every = 1;  // outer iterations between objective evaluations
};

struct TraceRecord {
  long outer_iter = 0;
  double wall_seconds = 0;   // elapsed since run start, stamped before evaluating
  double solve_seconds = 0;  // wall_seconds minus cumulated evaluation time
  double objective = 0;
};

struct SolverTrace {
  std::vector<TraceRecord> records;
  Eigen::VectorXd final_x;
  long outer_iterations = 0;
  double wall_seconds = 0;
};

// What a problem driver supplies to the solver. gradient() must write every
// entry listed in gradient_support() (all entries when the support is
// empty); off-support entries of grad F are identically zero.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual const Graph& graph() const = 0;
  virtual const Regularizer& regularizer() const = 0;
  virtual void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const = 0;
  virtual std::span<const int> gradient_support() const { return {}; }
  virtual double objective(const Eigen::VectorXd& x) const = 0;  // reported metric
  virtual Eigen::VectorXd initial_point() const = 0;
};

class SnakeSolver {
 public:
  SnakeSolver(const Problem& problem, SolverConfig config);

  // One simple-path segment, including the budget reset and the outer
  // counter advance when the budget empties.
  void segment_step();

  // Full loop with trace recording; deterministic given the seed apart from
  // the timing columns.
  SolverTrace run();

  const Eigen::VectorXd& iterate() const { return z_; }
  long outer_iterations() const { return n_; }
  std::int64_t remaining_budget() const { return remaining_; }
  OrientedEdge current_edge() const { return edge_; }
  double current_gamma() const { return config_.schedule.at(n_ + 1); }
  const SimplePath& last_segment() const { return last_segment_; }

 private:
  const Problem& problem_;
  SolverConfig config_;
  Rng rng_;
  Eigen::VectorXd z_;
  Eigen::VectorXd grad_;
  PathProxWorkspace prox_ws_;
  SimplePath last_segment_;
  OrientedEdge edge_;
  std::int64_t remaining_;
  long n_ = 0;
};

// Monte-Carlo estimate of R(x, phi) via Prop-style averaging of
// (|E|/L) * R(x, phi_xi) over independent length-L walks. Diagnostic; the
// optional output receives the standard error of the mean.
double estimate_regularizer(const Graph& g, const Regularizer& reg,
                            const Eigen::Ref<const Eigen::VectorXd>& x, std::int64_t L,
                            long num_samples, std::uint64_t seed,
                            double* std_error = nullptr);

}  // namespace snake
