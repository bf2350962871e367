#include "snake/regularizers.hpp"

#include <cmath>
#include <stdexcept>

#include "snake/prox1d.hpp"

namespace snake {

namespace {

void check_dimensions(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != g.num_nodes())
    throw std::invalid_argument("regularizer: signal length does not match node count");
}

double edge_weight(const Regularizer& reg, std::int64_t edge_id) {
  return reg.weighted() ? reg.weights().values[static_cast<std::size_t>(edge_id)] : 1.0;
}

double penalty(const Regularizer& reg, const Graph& g, int u, int v, double xu, double xv,
               std::int64_t edge_id) {
  switch (reg.kind()) {
    case RegKind::TV:
      return std::abs(xu - xv);
    case RegKind::WeightedTV:
      return edge_weight(reg, edge_id) * std::abs(xu - xv);
    case RegKind::Laplacian: {
      const double d = xu - xv;
      return d * d;
    }
    case RegKind::WeightedLaplacian: {
      const double d = xu - xv;
      return edge_weight(reg, edge_id) * d * d;
    }
    case RegKind::NormalizedLaplacian: {
      const double d = xu / std::sqrt(static_cast<double>(g.degree(u))) -
                       xv / std::sqrt(static_cast<double>(g.degree(v)));
      return d * d;
    }
  }
  throw std::logic_error("regularizer: unknown kind");
}

}  // namespace

Regularizer Regularizer::weighted_tv(EdgeWeights w) {
  return {RegKind::WeightedTV, std::make_shared<const EdgeWeights>(std::move(w))};
}

Regularizer Regularizer::weighted_laplacian(EdgeWeights w) {
  return {RegKind::WeightedLaplacian, std::make_shared<const EdgeWeights>(std::move(w))};
}

double evaluate(const Regularizer& reg, const Graph& g,
                const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_dimensions(g, x);
  if (reg.weighted() &&
      reg.weights().values.size() != static_cast<std::size_t>(g.num_edges()))
    throw std::invalid_argument("regularizer: weight count does not match edge count");
  double total = 0.0;
  const auto& edges = g.edges();
  for (std::int64_t e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = edges[static_cast<std::size_t>(e)];
    total += penalty(reg, g, u, v, x[u], x[v], e);
  }
  return total;
}

double evaluate_on_walk(const Regularizer& reg, const Graph& g, std::span<const int> walk,
                        const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_dimensions(g, x);
  double total = 0.0;
  for (std::size_t k = 1; k < walk.size(); ++k) {
    const int u = walk[k - 1], v = walk[k];
    const std::int64_t e = g.edge_index(u, v);
    if (e < 0) throw std::invalid_argument("regularizer: walk step is not an edge");
    total += penalty(reg, g, u, v, x[u], x[v], e);
  }
  return total;
}

double evaluate_on_path(const Regularizer& reg, const Graph& g, const SimplePath& path,
                        const Eigen::Ref<const Eigen::VectorXd>& x) {
  return evaluate_on_walk(reg, g, path.nodes, x);
}

namespace {

void gather_path_weights(const Regularizer& reg, const Graph& g, const SimplePath& path,
                         std::vector<double>& w) {
  w.clear();
  if (!reg.weighted()) return;
  for (std::size_t k = 1; k < path.nodes.size(); ++k) {
    const std::int64_t e = g.edge_index(path.nodes[k - 1], path.nodes[k]);
    if (e < 0) throw std::invalid_argument("regularizer: path step is not an edge");
    w.push_back(reg.weights().values[static_cast<std::size_t>(e)]);
  }
}

void prox_restricted(const Regularizer& reg, std::span<const double> values, double step,
                     std::span<const double> weights, std::span<double> out) {
  switch (reg.kind()) {
    case RegKind::TV:
    case RegKind::WeightedTV:
      prox1d::tv_prox_path(values, step, weights, out);
      return;
    case RegKind::Laplacian:
    case RegKind::WeightedLaplacian:
      prox1d::laplacian_prox_path(values, step, weights, out);
      return;
    case RegKind::NormalizedLaplacian:
      throw std::invalid_argument(
          "regularizer: the normalized Laplacian supports evaluation only, no prox");
  }
}

}  // namespace

Eigen::VectorXd prox_on_path(const Regularizer& reg, const Graph& g, const SimplePath& path,
                             const Eigen::Ref<const Eigen::VectorXd>& y_restricted,
                             double step) {
  if (y_restricted.size() != static_cast<Eigen::Index>(path.nodes.size()))
    throw std::invalid_argument("prox_on_path: values not aligned with the path");
  if (path.trivial()) return y_restricted;
  std::vector<double> w;
  gather_path_weights(reg, g, path, w);
  Eigen::VectorXd out(y_restricted.size());
  prox_restricted(reg, {y_restricted.data(), static_cast<std::size_t>(y_restricted.size())},
                  step, w, {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

void prox_on_path_in_place(const Regularizer& reg, const Graph& g, const SimplePath& path,
                           Eigen::VectorXd& x, double step, PathProxWorkspace& ws) {
  if (path.trivial()) return;
  ws.values.resize(path.nodes.size());
  ws.out.resize(path.nodes.size());
  for (std::size_t k = 0; k < path.nodes.size(); ++k) ws.values[k] = x[path.nodes[k]];
  gather_path_weights(reg, g, path, ws.weights);
  prox_restricted(reg, ws.values, step, ws.weights, ws.out);
  for (std::size_t k = 0; k < path.nodes.size(); ++k) x[path.nodes[k]] = ws.out[k];
}

}  // namespace snake
