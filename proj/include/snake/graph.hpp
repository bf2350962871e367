#pragma once
// Immutable undirected simple graph in compressed adjacency form, plus
// ingestion from SNAP-style edge lists and synthetic generators (stochastic
// block model, path, grid).
//
// Conventions shared by the whole library:
//   - nodes are dense 0-based indices; neighbor lists are sorted ascending;
//   - the canonical edge enumeration lists every {u,v} with u < v in
//     lexicographic order, and per-edge data (EdgeWeights, dual variables)
//     is keyed by that order;
//   - no self loops, no duplicate edges, adjacency is symmetric.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace snake {

// Strictly positive weights per undirected edge, aligned with Graph::edges().
struct EdgeWeights {
  std::vector<double> values;
};

class Graph {
 public:
  // Builds from an undirected edge list over nodes 0..num_nodes-1. Duplicate
  // pairs and both orientations of a pair collapse to one edge; self loops
  // are rejected. num_nodes may exceed the largest endpoint, leaving
  // isolated nodes in storage.
  static Graph from_edges(int num_nodes, std::vector<std::pair<int, int>> edge_list);

  int num_nodes() const { return static_cast<int>(offsets_.size()) - 1; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
  std::int64_t num_arcs() const { return static_cast<std::int64_t>(neighbors_.size()); }

  int degree(int v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  std::span<const int> neighbors(int v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
  // Canonical index of {u,v}, or -1 when the pair is not an edge.
  std::int64_t edge_index(int u, int v) const;
  // All {u,v} with u < v, sorted lexicographically.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Oriented arc a in [0, 2|E|): source recovered by offset bisection.
  std::pair<int, int> arc(std::int64_t a) const;

  // Node labels of the source file when loaded from disk; empty means the
  // identity mapping.
  const std::vector<std::int64_t>& original_ids() const { return original_ids_; }

 private:
  Graph() = default;

  std::vector<std::int64_t> offsets_;      // size n+1
  std::vector<int> neighbors_;             // size 2|E|, sorted within a node
  std::vector<std::int64_t> arc_edge_;     // canonical edge id per arc
  std::vector<std::pair<int, int>> edges_; // canonical enumeration
  std::vector<std::int64_t> original_ids_;

  friend Graph load_edge_list(std::istream& in);
};

// SNAP edge-list text: one "<u> <v>" pair per line, arbitrary whitespace,
// lines starting with '#' ignored. Node ids are remapped to dense 0-based
// indices sorted by original id; the mapping is kept in original_ids().
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// Blockwise Erdos-Renyi draw: each unordered pair is an independent
// Bernoulli with success probability p_in inside a block and p_out across
// blocks. Deterministic given the seed.
Graph sample_sbm(std::span<const int> block_sizes, double p_in, double p_out,
                 std::uint64_t seed);

Graph path_graph(int n);
Graph grid_graph(int rows, int cols);

// pi(v) = deg(v) / (2|E|), the stationary law of the uniform-neighbor kernel.
Eigen::VectorXd node_distribution(const Graph& g);

EdgeWeights uniform_weights(const Graph& g, double value);

}  // namespace snake
