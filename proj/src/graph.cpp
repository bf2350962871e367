#include "snake/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "snake/rng.hpp"

namespace snake {

Graph Graph::from_edges(int num_nodes, std::vector<std::pair<int, int>> edge_list) {
  if (num_nodes < 0) throw std::invalid_argument("graph: negative node count");
  for (auto& [u, v] : edge_list) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
      throw std::invalid_argument("graph: endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self loop rejected");
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());

  Graph g;
  g.edges_ = std::move(edge_list);
  const std::int64_t m = static_cast<std::int64_t>(g.edges_.size());

  std::vector<std::int64_t> deg(num_nodes, 0);
  for (const auto& [u, v] : g.edges_) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(num_nodes + 1, 0);
  for (int v = 0; v < num_nodes; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];

  g.neighbors_.resize(2 * m);
  g.arc_edge_.resize(2 * m);
  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // edges_ is lexicographically sorted, so each node's list comes out sorted.
  for (std::int64_t e = 0; e < m; ++e) {
    const auto [u, v] = g.edges_[e];
    g.neighbors_[cursor[u]] = v;
    g.arc_edge_[cursor[u]++] = e;
  }
  for (std::int64_t e = 0; e < m; ++e) {
    const auto [u, v] = g.edges_[e];
    g.neighbors_[cursor[v]] = u;
    g.arc_edge_[cursor[v]++] = e;
  }
  for (int v = 0; v < num_nodes; ++v)
    std::sort(g.neighbors_.begin() + g.offsets_[v], g.neighbors_.begin() + g.offsets_[v + 1]);
  // Re-derive arc -> edge ids after the sort.
  for (int v = 0; v < num_nodes; ++v) {
    for (std::int64_t a = g.offsets_[v]; a < g.offsets_[v + 1]; ++a) {
      const int w = g.neighbors_[a];
      const auto key = std::make_pair(std::min(v, w), std::max(v, w));
      const auto it = std::lower_bound(g.edges_.begin(), g.edges_.end(), key);
      g.arc_edge_[a] = it - g.edges_.begin();
    }
  }
  return g;
}

std::int64_t Graph::edge_index(int u, int v) const {
  if (u == v) return -1;
  if (u > v) std::swap(u, v);
  const auto key = std::make_pair(u, v);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return it - edges_.begin();
}

std::pair<int, int> Graph::arc(std::int64_t a) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), a);
  const int src = static_cast<int>(it - offsets_.begin()) - 1;
  return {src, neighbors_[a]};
}

Graph load_edge_list(std::istream& in) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::int64_t u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) {
      throw std::invalid_argument("edge list: line " + std::to_string(line_no) +
                                  ": expected two integer node ids, got \"" + line + "\"");
    }
    if (u == v) {
      throw std::invalid_argument("edge list: line " + std::to_string(line_no) +
                                  ": self loop " + std::to_string(u) + " rejected");
    }
    raw.emplace_back(u, v);
  }
  if (raw.empty()) throw std::invalid_argument("edge list: no edges found");

  // Dense relabeling sorted by original id, so already-dense files reload
  // onto themselves.
  std::vector<std::int64_t> ids;
  ids.reserve(2 * raw.size());
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<std::int64_t, int> to_dense;
  to_dense.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) to_dense[ids[i]] = static_cast<int>(i);

  std::vector<std::pair<int, int>> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) edges.emplace_back(to_dense[u], to_dense[v]);

  Graph g = Graph::from_edges(static_cast<int>(ids.size()), std::move(edges));
  g.original_ids_ = std::move(ids);
  return g;
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list file: " + path);
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# undirected edge list: " << g.num_nodes() << " nodes, " << g.num_edges()
      << " edges\n";
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph sample_sbm(std::span<const int> block_sizes, double p_in, double p_out,
                 std::uint64_t seed) {
  if (block_sizes.empty()) throw std::invalid_argument("sbm: empty block list");
  for (int b : block_sizes)
    if (b < 0) throw std::invalid_argument("sbm: negative block size");
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
    throw std::invalid_argument("sbm: probabilities must lie in [0,1]");

  std::vector<int> block_of;
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    block_of.insert(block_of.end(), block_sizes[b], static_cast<int>(b));
  const int n = static_cast<int>(block_of.size());

  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = block_of[i] == block_of[j] ? p_in : p_out;
      if (rng.next_double() < p) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path graph: need at least one node");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(edges));
}

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid graph: empty dimension");
  std::vector<std::pair<int, int>> edges;
  const auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph::from_edges(rows * cols, std::move(edges));
}

Eigen::VectorXd node_distribution(const Graph& g) {
  if (g.num_edges() < 1)
    throw std::invalid_argument("node distribution undefined on an edgeless graph");
  Eigen::VectorXd pi(g.num_nodes());
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  for (int v = 0; v < g.num_nodes(); ++v) pi[v] = g.degree(v) / two_m;
  return pi;
}

EdgeWeights uniform_weights(const Graph& g, double value) {
  if (!(value > 0.0)) throw std::invalid_argument("edge weights must be positive");
  return EdgeWeights{std::vector<double>(static_cast<std::size_t>(g.num_edges()), value)};
}

}  // namespace snake
