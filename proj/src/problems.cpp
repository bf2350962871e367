#include "snake/problems.hpp"

#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace snake {

double calibrate_lambda(const Graph& g) {
  if (g.num_edges() < 1) throw std::invalid_argument("calibrate_lambda: edgeless graph");
  const double pi = std::acos(-1.0);
  return static_cast<double>(g.num_nodes()) * std::sqrt(pi) /
         (2.0 * static_cast<double>(g.num_edges()));
}

TrendFilteringProblem::TrendFilteringProblem(const Graph& g, Eigen::VectorXd y, double lambda)
    : graph_(&g),
      y_(std::move(y)),
      lambda_(lambda),
      reg_(Regularizer::weighted_tv(uniform_weights(g, lambda))) {
  if (y_.size() != g.num_nodes())
    throw std::invalid_argument("trend filtering: signal length does not match graph");
  if (!(lambda > 0.0)) throw std::invalid_argument("trend filtering: lambda must be positive");
}

void TrendFilteringProblem::gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
  grad = x - y_;
}

double TrendFilteringProblem::objective(const Eigen::VectorXd& x) const {
  return 0.5 * (x - y_).squaredNorm() + evaluate(reg_, *graph_, x);
}

InpaintingProblem::InpaintingProblem(const Graph& full_graph, const Eigen::VectorXd& y,
                                     const std::vector<bool>& observed,
                                     std::ostream* warnings)
    : full_graph_(&full_graph),
      y_full_(y),
      observed_(observed),
      reg_(Regularizer::laplacian()) {
  const int n = full_graph.num_nodes();
  if (y.size() != n || static_cast<int>(observed.size()) != n)
    throw std::invalid_argument("inpainting: signal or mask length does not match graph");

  std::vector<int> sub_index(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!observed_[v]) {
      sub_index[v] = static_cast<int>(unobserved_.size());
      unobserved_.push_back(v);
    }
  }

  std::vector<std::pair<int, int>> sub_edges;
  for (const auto& [u, v] : full_graph.edges()) {
    if (!observed_[u] && !observed_[v])
      sub_edges.emplace_back(sub_index[u], sub_index[v]);
  }
  subgraph_ = Graph::from_edges(static_cast<int>(unobserved_.size()), std::move(sub_edges));

  boundary_count_.setZero(subgraph_.num_nodes());
  boundary_sum_.setZero(subgraph_.num_nodes());
  for (int i = 0; i < subgraph_.num_nodes(); ++i) {
    const int full_v = unobserved_[i];
    for (int w : full_graph.neighbors(full_v)) {
      if (observed_[w]) {
        boundary_count_[i] += 1.0;
        boundary_sum_[i] += y_full_[w];
      }
    }
    if (boundary_count_[i] > 0.0) boundary_nodes_.push_back(i);
  }

  if (warnings) {
    // Unobserved nodes with no path to any observed node are constrained
    // only by the regularizer.
    std::vector<char> reached(n, 0);
    std::deque<int> queue;
    for (int v = 0; v < n; ++v) {
      if (observed_[v]) {
        reached[v] = 1;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : full_graph.neighbors(v)) {
        if (!reached[w]) {
          reached[w] = 1;
          queue.push_back(w);
        }
      }
    }
    long stranded = 0;
    for (int v = 0; v < n; ++v)
      if (!observed_[v] && !reached[v]) ++stranded;
    if (stranded > 0)
      *warnings << "inpainting: " << stranded
                << " unobserved node(s) have no path to an observed node; their values"
                   " are determined only by the regularizer\n";
  }
}

void InpaintingProblem::gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
  for (int i : boundary_nodes_)
    grad[i] = 2.0 * (boundary_count_[i] * x[i] - boundary_sum_[i]);
}

double InpaintingProblem::objective(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd full = full_signal(x);
  double energy = 0.0;
  for (const auto& [u, v] : full_graph_->edges()) {
    const double d = full[u] - full[v];
    energy += d * d;
  }
  return energy;
}

Eigen::VectorXd InpaintingProblem::full_signal(const Eigen::VectorXd& x) const {
  Eigen::VectorXd full = y_full_;
  for (int i = 0; i < subgraph_.num_nodes(); ++i) full[unobserved_[i]] = x[i];
  return full;
}

double InpaintingProblem::harmonicity_residual(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd full = full_signal(x);
  double worst = 0.0;
  for (int i = 0; i < subgraph_.num_nodes(); ++i) {
    const int v = unobserved_[i];
    const auto nbrs = full_graph_->neighbors(v);
    if (nbrs.empty()) continue;
    double mean = 0.0;
    for (int w : nbrs) mean += full[w];
    mean /= static_cast<double>(nbrs.size());
    worst = std::max(worst, std::abs(full[v] - mean));
  }
  return worst;
}

Eigen::VectorXd InpaintingProblem::boundary_only_solution() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(subgraph_.num_nodes());
  for (int i : boundary_nodes_) x[i] = boundary_sum_[i] / boundary_count_[i];
  return x;
}

void InpaintingProblem::apply_harmonic_system(const Eigen::VectorXd& x,
                                              Eigen::VectorXd& out) const {
  out.resize(subgraph_.num_nodes());
  for (int i = 0; i < subgraph_.num_nodes(); ++i) {
    double acc = (static_cast<double>(subgraph_.degree(i)) + boundary_count_[i]) * x[i];
    for (int j : subgraph_.neighbors(i)) acc -= x[j];
    out[i] = acc;
  }
}

LaplacianSystemProblem::LaplacianSystemProblem(const Graph& g, Eigen::VectorXd b, bool center)
    : graph_(&g), b_(std::move(b)), reg_(Regularizer::weighted_laplacian(uniform_weights(g, 0.5))) {
  if (b_.size() != g.num_nodes())
    throw std::invalid_argument("laplacian system: rhs length does not match graph");
  const double mean = b_.mean();
  if (center) {
    b_.array() -= mean;
  } else if (std::abs(mean) > 1e-9) {
    throw std::invalid_argument("laplacian system: rhs must have zero mean (|mean| = " +
                                std::to_string(std::abs(mean)) + "); pass center=true to shift");
  }
}

void LaplacianSystemProblem::gradient(const Eigen::VectorXd&, Eigen::VectorXd& grad) const {
  grad = -b_;
}

void LaplacianSystemProblem::apply_laplacian(const Eigen::VectorXd& x,
                                             Eigen::VectorXd& out) const {
  out.resize(graph_->num_nodes());
  for (int v = 0; v < graph_->num_nodes(); ++v) {
    double acc = static_cast<double>(graph_->degree(v)) * x[v];
    for (int w : graph_->neighbors(v)) acc -= x[w];
    out[v] = acc;
  }
}

double LaplacianSystemProblem::residual_norm(const Eigen::VectorXd& x) const {
  Eigen::VectorXd lx;
  apply_laplacian(x, lx);
  return (lx - b_).norm();
}

double LaplacianSystemProblem::quadratic_objective(const Eigen::VectorXd& x) const {
  Eigen::VectorXd lx;
  apply_laplacian(x, lx);
  return -b_.dot(x) + 0.5 * x.dot(lx);
}

Eigen::VectorXd gaussian_signal(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.next_gaussian();
  return y;
}

Eigen::VectorXd sbm_signal(std::span<const int> block_sizes, std::span<const double> levels,
                           double sigma, std::uint64_t seed) {
  if (levels.size() != block_sizes.size())
    throw std::invalid_argument("sbm signal: one level per block required");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sbm signal: sigma must be >= 0");
  Rng rng(seed);
  std::vector<double> values;
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    for (int k = 0; k < block_sizes[b]; ++k)
      values.push_back(levels[b] + sigma * rng.next_gaussian());
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

namespace {

// Shared "node,<field>" reader; returns (node, value) rows.
std::vector<std::pair<int, double>> read_node_csv(std::istream& in, int num_nodes,
                                                  const std::string& expected_header) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("csv: empty file, expected header " + expected_header);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw std::invalid_argument("csv: expected header \"" + expected_header + "\", got \"" +
                                line + "\"");
  std::vector<std::pair<int, double>> rows;
  std::vector<char> seen(num_nodes, 0);
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string node_tok, value_tok;
    if (!std::getline(ls, node_tok, ',') || !std::getline(ls, value_tok)) {
      throw std::invalid_argument("csv: line " + std::to_string(line_no) + ": expected 2 fields");
    }
    std::size_t pos = 0;
    const int node = std::stoi(node_tok, &pos);
    if (pos != node_tok.size())
      throw std::invalid_argument("csv: line " + std::to_string(line_no) + ": bad node id");
    const double value = std::stod(value_tok, &pos);
    if (node < 0 || node >= num_nodes)
      throw std::invalid_argument("csv: line " + std::to_string(line_no) + ": node out of range");
    if (seen[node])
      throw std::invalid_argument("csv: line " + std::to_string(line_no) + ": duplicate node");
    seen[node] = 1;
    rows.emplace_back(node, value);
  }
  return rows;
}

}  // namespace

Eigen::VectorXd load_signal_csv(std::istream& in, int num_nodes) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(num_nodes);
  for (const auto& [node, value] : read_node_csv(in, num_nodes, "node,value")) {
    if (!std::isfinite(value)) throw std::invalid_argument("signal csv: non-finite value");
    y[node] = value;
  }
  return y;
}

void write_signal_csv(std::ostream& out, const Eigen::Ref<const Eigen::VectorXd>& x) {
  out << "node,value\n";
  char buf[64];
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", static_cast<long long>(i), x[i]);
    out << buf;
  }
}

std::vector<bool> load_mask_csv(std::istream& in, int num_nodes) {
  std::vector<bool> observed(num_nodes, false);
  for (const auto& [node, value] : read_node_csv(in, num_nodes, "node,observed")) {
    if (value != 0.0 && value != 1.0)
      throw std::invalid_argument("mask csv: observed must be 0 or 1");
    observed[node] = value == 1.0;
  }
  return observed;
}

std::vector<bool> random_mask(int n, double observed_fraction, std::uint64_t seed) {
  if (!(observed_fraction >= 0.0 && observed_fraction <= 1.0))
    throw std::invalid_argument("mask: fraction must lie in [0,1]");
  const long count = static_cast<long>(observed_fraction * n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (int i = 0; i < n - 1; ++i) {
    const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
    std::swap(order[i], order[j]);
  }
  std::vector<bool> observed(n, false);
  for (long k = 0; k < count; ++k) observed[order[k]] = true;
  return observed;
}

}  // namespace snake
