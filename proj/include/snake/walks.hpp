#pragma once
// Degree-proportional random walks and their online split into maximal
// simple paths.
//
// A walk starts from an oriented edge whose source is drawn proportionally
// to degree and extends by uniform-neighbor steps. A segment closes when the
// sampled node already occurs in it (that node is the pivot and seeds the
// next segment) or when the caller's edge budget is exhausted (the pivot is
// discarded). Chaining segments under a shared budget L reproduces exactly
// the first-repetition decomposition of a length-L walk.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "snake/graph.hpp"
#include "snake/rng.hpp"

namespace snake {

// Loop-free node sequence; every consecutive pair is an edge of the host
// graph. A single vertex is the trivial path of length zero.
struct SimplePath {
  std::vector<int> nodes;

  std::int64_t length() const { return static_cast<std::int64_t>(nodes.size()) - 1; }
  bool trivial() const { return nodes.size() == 1; }
  int front() const { return nodes.front(); }
  int back() const { return nodes.back(); }
};

// Split of a length-L walk into maximal simple paths sharing endpoints.
struct WalkDecomposition {
  std::vector<SimplePath> segments;
  std::int64_t budget_L = 0;
};

using OrientedEdge = std::pair<int, int>;

// (v, w) with v ~ pi and w uniform among v's neighbors; equivalently one of
// the 2|E| oriented arcs drawn uniformly.
OrientedEdge rnd_oriented_edge(const Graph& g, Rng& rng);

int uniform_neighbor(const Graph& g, int v, Rng& rng);

struct SegmentResult {
  SimplePath path;
  // Oriented edge (last node of path, pivot); empty when the walk stopped
  // because the budget was reached, in which case the pivot is unused.
  std::optional<OrientedEdge> next_edge;
};

// Extends the walk from start_edge until a node repeats or the segment holds
// `budget` edges, whichever comes first; budget exhaustion wins ties.
SegmentResult simple_path(const Graph& g, OrientedEdge start_edge, std::int64_t budget,
                          Rng& rng);

// Offline mirror of the segment stream, for testing: cuts a completed walk
// at first repetitions.
WalkDecomposition decompose_walk(const Graph& g, std::span<const int> walk);

// Length-L walk started at a degree-proportional node.
std::vector<int> random_walk(const Graph& g, std::int64_t length, Rng& rng);

}  // namespace snake
