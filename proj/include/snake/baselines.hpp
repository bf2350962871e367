#pragma once
// Deterministic reference solvers, used both as experimental comparators and
// as correctness oracles.
//
// TV dual: with D the signed incidence operator ((Dx)_e = x(u) - x(v) for
// the canonical edge {u,v}, u < v), the primal
//     min_x 1/2 ||x - y||^2 + sum_e b_e |(Dx)_e|
// has the box-constrained quadratic dual
//     min_{|z_e| <= b_e} 1/2 ||y - D'z||^2,
// with x = y - D'z and duality gap sum_e (b_e |(Dx)_e| - z_e (Dx)_e).
// Projected gradient with step 1/||D'D|| solves it; D'D is the graph
// Laplacian, whose norm comes from power iteration.

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "snake/graph.hpp"
#include "snake/solver.hpp"

namespace snake {

class IncidenceOperator {
 public:
  explicit IncidenceOperator(const Graph& g);

  void apply_d(const Eigen::VectorXd& x, Eigen::VectorXd& z) const;
  void apply_dt(const Eigen::VectorXd& z, Eigen::VectorXd& x) const;
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
  int num_nodes() const { return num_nodes_; }

  // Largest eigenvalue of D'D (the graph Laplacian), by power iteration.
  double laplacian_norm(int iterations = 100) const;

 private:
  std::vector<std::pair<int, int>> edges_;
  int num_nodes_;
};

struct PgDualResult {
  Eigen::VectorXd x;  // primal y - D'z
  Eigen::VectorXd z;  // dual edge variables
  std::vector<TraceRecord> trace;
  bool converged = false;
  long iterations = 0;
  double gap = 0.0;
};

// Projected gradient on the TV dual; per-edge bound lambda * w_e (w = 1
// when no weights are given). Terminates at duality gap <= tol.
PgDualResult pg_dual_tv(const Graph& g, const Eigen::VectorXd& y, double lambda,
                        long max_iters, double tol, const EdgeWeights* weights = nullptr,
                        long eval_every = 100);

struct CgResult {
  Eigen::VectorXd x;
  std::vector<TraceRecord> trace;
  bool converged = false;
  bool breakdown = false;
  long iterations = 0;
  double residual_norm = 0.0;  // true residual, recomputed at exit
};

using LinearOperator = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
using TraceMetric = std::function<double(const Eigen::VectorXd&)>;

// Standard conjugate gradient for symmetric positive semidefinite operators;
// b must be orthogonal to the kernel when the operator is singular. Stops at
// ||Ax - b|| <= tol * ||b|| (absolute when b = 0). The trace records
// `metric` when given, the recursive residual norm otherwise.
CgResult conjugate_gradient(const LinearOperator& apply_a, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& x0, double tol, long max_iters,
                            const TraceMetric& metric = nullptr, long eval_every = 1);

}  // namespace snake
