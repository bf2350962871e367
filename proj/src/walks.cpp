#include "snake/walks.hpp"

#include <stdexcept>
#include <unordered_set>

namespace snake {

OrientedEdge rnd_oriented_edge(const Graph& g, Rng& rng) {
  if (g.num_edges() < 1)
    throw std::invalid_argument("rnd_oriented_edge: graph has no edges");
  const std::int64_t a =
      static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(g.num_arcs())));
  return g.arc(a);
}

int uniform_neighbor(const Graph& g, int v, Rng& rng) {
  const auto nbrs = g.neighbors(v);
  if (nbrs.empty())
    throw std::logic_error("uniform_neighbor: node " + std::to_string(v) + " is isolated");
  return nbrs[rng.next_below(nbrs.size())];
}

SegmentResult simple_path(const Graph& g, OrientedEdge start_edge, std::int64_t budget,
                          Rng& rng) {
  if (budget < 1) throw std::invalid_argument("simple_path: budget must be >= 1");
  if (!g.has_edge(start_edge.first, start_edge.second))
    throw std::invalid_argument("simple_path: start pair is not an edge");

  SimplePath c;
  c.nodes = {start_edge.first, start_edge.second};
  std::unordered_set<int> in_segment(c.nodes.begin(), c.nodes.end());

  int w = uniform_neighbor(g, c.back(), rng);
  while (!in_segment.contains(w) && c.length() < budget) {
    c.nodes.push_back(w);
    in_segment.insert(w);
    w = uniform_neighbor(g, w, rng);
  }

  SegmentResult result;
  if (c.length() == budget) {
    result.next_edge = std::nullopt;  // budget exhausted; pivot discarded
  } else {
    result.next_edge = OrientedEdge{c.back(), w};
  }
  result.path = std::move(c);
  return result;
}

WalkDecomposition decompose_walk(const Graph& g, std::span<const int> walk) {
  if (walk.size() < 2) throw std::invalid_argument("decompose_walk: walk length must be >= 1");
  for (std::size_t k = 1; k < walk.size(); ++k) {
    if (!g.has_edge(walk[k - 1], walk[k]))
      throw std::invalid_argument("decompose_walk: consecutive pair is not an edge");
  }

  WalkDecomposition d;
  d.budget_L = static_cast<std::int64_t>(walk.size()) - 1;
  std::size_t start = 0;
  std::unordered_set<int> seen{walk[0]};
  for (std::size_t k = 1; k < walk.size(); ++k) {
    if (seen.contains(walk[k])) {
      d.segments.push_back(
          SimplePath{std::vector<int>(walk.begin() + start, walk.begin() + k)});
      start = k - 1;
      seen.clear();
      seen.insert(walk[k - 1]);
    }
    seen.insert(walk[k]);
  }
  d.segments.push_back(
      SimplePath{std::vector<int>(walk.begin() + start, walk.end())});
  return d;
}

std::vector<int> random_walk(const Graph& g, std::int64_t length, Rng& rng) {
  if (length < 1) throw std::invalid_argument("random_walk: length must be >= 1");
  const auto [v0, v1] = rnd_oriented_edge(g, rng);
  std::vector<int> walk{v0, v1};
  walk.reserve(static_cast<std::size_t>(length) + 1);
  while (static_cast<std::int64_t>(walk.size()) <= length)
    walk.push_back(uniform_neighbor(g, walk.back(), rng));
  return walk;
}

}  // namespace snake
