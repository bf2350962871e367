#pragma once
// The three experiment drivers:
//
//   - trend filtering:  min 1/2 ||x - y||^2 + lambda * sum_E |x(i) - x(j)|
//   - inpainting: harmonic energy minimization over the subgraph induced by
//     the unobserved nodes, with the boundary terms to observed values as
//     the smooth part:
//         F(x) = sum_{i unobs, j obs, {i,j} in E} (x(i) - y(j))^2
//     and sum_{E_unobs} (x(i) - x(j))^2 as the regularizer; the reported
//     metric is the harmonic energy over the full graph with observed
//     coordinates clamped to y.
//   - Laplacian system:  min -b'x + 1/2 x'Lx, whose minimizers solve
//     Lx = b; the reported metric is ||Lx - b||.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "snake/solver.hpp"

namespace snake {

// lambda with E[1/2||x-y||^2] = E[lambda * sum_E |x(i)-x(j)|] for
// independent standard Gaussian x, y:  |V| sqrt(pi) / (2|E|).
double calibrate_lambda(const Graph& g);

class TrendFilteringProblem final : public Problem {
 public:
  TrendFilteringProblem(const Graph& g, Eigen::VectorXd y, double lambda);

  const Graph& graph() const override { return *graph_; }
  const Regularizer& regularizer() const override { return reg_; }
  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const override;
  double objective(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd initial_point() const override { return y_; }

  double lambda() const { return lambda_; }
  const Eigen::VectorXd& data() const { return y_; }

 private:
  const Graph* graph_;
  Eigen::VectorXd y_;
  double lambda_;
  Regularizer reg_;
};

class InpaintingProblem final : public Problem {
 public:
  InpaintingProblem(const Graph& full_graph, const Eigen::VectorXd& y,
                    const std::vector<bool>& observed, std::ostream* warnings = nullptr);

  // The solver surface is the induced subgraph over unobserved nodes.
  const Graph& graph() const override { return subgraph_; }
  const Regularizer& regularizer() const override { return reg_; }
  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const override;
  std::span<const int> gradient_support() const override { return boundary_nodes_; }
  double objective(const Eigen::VectorXd& x) const override;  // full harmonic energy
  Eigen::VectorXd initial_point() const override {
    return Eigen::VectorXd::Zero(subgraph_.num_nodes());
  }

  bool solvable_by_walks() const { return subgraph_.num_edges() >= 1; }
  std::span<const int> unobserved_nodes() const { return unobserved_; }

  // Join a subgraph iterate back onto the full node set (observed clamped).
  Eigen::VectorXd full_signal(const Eigen::VectorXd& x) const;
  // Largest deviation of an unobserved node from the mean of its neighbors'
  // values in the full graph.
  double harmonicity_residual(const Eigen::VectorXd& x) const;
  // Each unobserved node set to the mean of its observed neighbors; the
  // exact optimum when the induced subgraph has no edges.
  Eigen::VectorXd boundary_only_solution() const;

  // The interior optimality system A x = rhs with
  // A = L_unobs + diag(#observed neighbors); feeds the CG baseline.
  void apply_harmonic_system(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;
  const Eigen::VectorXd& harmonic_rhs() const { return boundary_sum_; }

 private:
  const Graph* full_graph_;
  Eigen::VectorXd y_full_;
  std::vector<bool> observed_;
  Graph subgraph_;
  std::vector<int> unobserved_;     // subgraph index -> full index
  std::vector<int> boundary_nodes_; // subgraph nodes with observed neighbors
  Eigen::VectorXd boundary_count_;  // per subgraph node
  Eigen::VectorXd boundary_sum_;    // sum of observed neighbor values
  Regularizer reg_;
};

class LaplacianSystemProblem final : public Problem {
 public:
  LaplacianSystemProblem(const Graph& g, Eigen::VectorXd b, bool center = false);

  const Graph& graph() const override { return *graph_; }
  const Regularizer& regularizer() const override { return reg_; }
  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const override;
  double objective(const Eigen::VectorXd& x) const override { return residual_norm(x); }
  Eigen::VectorXd initial_point() const override {
    return Eigen::VectorXd::Zero(graph_->num_nodes());
  }

  double residual_norm(const Eigen::VectorXd& x) const;       // ||Lx - b||
  double quadratic_objective(const Eigen::VectorXd& x) const; // -b'x + x'Lx/2
  void apply_laplacian(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;
  const Eigen::VectorXd& rhs() const { return b_; }

 private:
  const Graph* graph_;
  Eigen::VectorXd b_;
  Regularizer reg_;
};

// Signal generation and file formats.
Eigen::VectorXd gaussian_signal(int n, std::uint64_t seed);
// y(i) = levels[block(i)] + sigma * eps_i with blocks laid out contiguously.
Eigen::VectorXd sbm_signal(std::span<const int> block_sizes, std::span<const double> levels,
                           double sigma, std::uint64_t seed);

// CSV with header "node,value"; unlisted nodes default to 0.
Eigen::VectorXd load_signal_csv(std::istream& in, int num_nodes);
void write_signal_csv(std::ostream& out, const Eigen::Ref<const Eigen::VectorXd>& x);
// CSV with header "node,observed" (0/1); unlisted nodes are unobserved.
std::vector<bool> load_mask_csv(std::istream& in, int num_nodes);
// Exactly floor(n * observed_fraction) observed nodes, drawn uniformly.
std::vector<bool> random_mask(int n, double observed_fraction, std::uint64_t seed);

}  // namespace snake
