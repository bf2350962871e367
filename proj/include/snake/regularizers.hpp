#pragma once
// The phi-family abstraction: a per-edge convex symmetric penalty summed
// over graph edges. Evaluation runs over the whole edge set or along a
// walk; the prox dispatches to the exact 1D kernels on a simple path.
//
// Kinds: absolute difference (TV), squared difference (Laplacian), their
// per-edge weighted variants, and the degree-normalized squared difference
// (evaluation only; no prox).

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "snake/graph.hpp"
#include "snake/walks.hpp"

namespace snake {

enum class RegKind { TV, WeightedTV, Laplacian, WeightedLaplacian, NormalizedLaplacian };

class Regularizer {
 public:
  static Regularizer tv() { return {RegKind::TV, nullptr}; }
  static Regularizer weighted_tv(EdgeWeights w);
  static Regularizer laplacian() { return {RegKind::Laplacian, nullptr}; }
  static Regularizer weighted_laplacian(EdgeWeights w);
  static Regularizer normalized_laplacian() { return {RegKind::NormalizedLaplacian, nullptr}; }

  RegKind kind() const { return kind_; }
  bool weighted() const {
    return kind_ == RegKind::WeightedTV || kind_ == RegKind::WeightedLaplacian;
  }
  bool prox_supported() const { return kind_ != RegKind::NormalizedLaplacian; }
  const EdgeWeights& weights() const { return *weights_; }

 private:
  Regularizer(RegKind kind, std::shared_ptr<const EdgeWeights> weights)
      : kind_(kind), weights_(std::move(weights)) {}

  RegKind kind_;
  std::shared_ptr<const EdgeWeights> weights_;
};

// R(x, phi): sum over every undirected edge, counted once.
double evaluate(const Regularizer& reg, const Graph& g,
                const Eigen::Ref<const Eigen::VectorXd>& x);

// Sum over a walk's traversed edges (repeats counted per traversal); zero
// for a single vertex.
double evaluate_on_walk(const Regularizer& reg, const Graph& g, std::span<const int> walk,
                        const Eigen::Ref<const Eigen::VectorXd>& x);
double evaluate_on_path(const Regularizer& reg, const Graph& g, const SimplePath& path,
                        const Eigen::Ref<const Eigen::VectorXd>& x);

// prox of step * R(., phi_path) at values aligned with the path's nodes.
Eigen::VectorXd prox_on_path(const Regularizer& reg, const Graph& g, const SimplePath& path,
                             const Eigen::Ref<const Eigen::VectorXd>& y_restricted,
                             double step);

// Gather x along the path, prox, scatter back; buffers are reused across
// calls by the solver loop.
struct PathProxWorkspace {
  std::vector<double> values;
  std::vector<double> weights;
  std::vector<double> out;
};
void prox_on_path_in_place(const Regularizer& reg, const Graph& g, const SimplePath& path,
                           Eigen::VectorXd& x, double step, PathProxWorkspace& ws);

}  // namespace snake
