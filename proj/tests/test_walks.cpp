#include <doctest.h>

#include <cmath>
#include <map>

#include "snake/walks.hpp"
#include "support/oracles.hpp"

using namespace snake;

namespace {

Graph triangle() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

}  // namespace

TEST_CASE("rnd_oriented_edge matches the pi * uniform-neighbor law on a triangle") {
  const Graph g = triangle();
  Rng rng(31);
  const int draws = 300000;
  std::map<OrientedEdge, int> counts;
  for (int i = 0; i < draws; ++i) ++counts[rnd_oriented_edge(g, rng)];
  REQUIRE(counts.size() == 6);
  const double expected = draws / 6.0;
  const double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
  for (const auto& [edge, count] : counts) CHECK(std::abs(count - expected) < 3 * sigma);
}

TEST_CASE("rnd_oriented_edge on a path weights the middle node") {
  // oriented edge (1,0) has probability pi(1) * 1/deg(1) = 1/2 * 1/2 = 1/4
  const Graph g = path_graph(3);
  Rng rng(77);
  const int draws = 200000;
  int hits = 0;
  for (int i = 0; i < draws; ++i)
    if (rnd_oriented_edge(g, rng) == OrientedEdge{1, 0}) ++hits;
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  CHECK(std::abs(hits - draws * 0.25) < 4 * sigma);
}

TEST_CASE("rnd_oriented_edge on a single edge is a fair coin") {
  const Graph g = path_graph(2);
  Rng rng(5);
  int first = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i)
    if (rnd_oriented_edge(g, rng) == OrientedEdge{0, 1}) ++first;
  CHECK(std::abs(first - draws / 2) < 4 * std::sqrt(draws * 0.25));

  const Graph edgeless = sample_sbm(std::vector<int>{3}, 0.0, 0.0, 1);
  CHECK_THROWS_AS(rnd_oriented_edge(edgeless, rng), std::invalid_argument);
}

TEST_CASE("uniform_neighbor is uniform on a star center") {
  std::vector<std::pair<int, int>> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  const Graph g = Graph::from_edges(5, star);
  Rng rng(13);
  const int draws = 100000;
  int counts[5] = {};
  for (int i = 0; i < draws; ++i) ++counts[uniform_neighbor(g, 0, rng)];
  // chi^2 against uniform over the 4 leaves
  double chi2 = 0.0;
  const double expected = draws / 4.0;
  for (int leaf = 1; leaf <= 4; ++leaf)
    chi2 += (counts[leaf] - expected) * (counts[leaf] - expected) / expected;
  CHECK(chi2 < snake::testing::chi2_quantile_99(3));

  CHECK(uniform_neighbor(g, 1, rng) == 0);  // degree-1 node: unique neighbor

  const Graph lonely = sample_sbm(std::vector<int>{2}, 0.0, 0.0, 1);
  CHECK_THROWS_AS(uniform_neighbor(lonely, 0, rng), std::logic_error);
}

TEST_CASE("simple_path on the 2-edge path is forced") {
  const Graph g = path_graph(3);
  Rng rng(1);
  const SegmentResult seg = simple_path(g, {0, 1}, 5, rng);
  CHECK(seg.path.nodes == std::vector<int>{0, 1, 2});
  REQUIRE(seg.next_edge.has_value());
  CHECK(*seg.next_edge == OrientedEdge{2, 1});
}

TEST_CASE("simple_path with budget 1 returns the start edge") {
  const Graph g = triangle();
  Rng rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    const SegmentResult seg = simple_path(g, {0, 1}, 1, rng);
    CHECK(seg.path.nodes == std::vector<int>{0, 1});
    CHECK(!seg.next_edge.has_value());  // budget exhaustion wins
  }
}

TEST_CASE("simple_path law on the triangle matches brute force") {
  // From (0,1) with budget 8: next step from 1 is uniform over {0,2}.
  // w=0: stop at (0,1) with pivot edge (1,0).  w=2: extend to (0,1,2), then
  // the next node is 0 or 1, both already in the segment.
  const Graph g = triangle();
  Rng rng(17);
  const int draws = 100000;
  int stop_short = 0, ext_pivot0 = 0, ext_pivot1 = 0;
  for (int i = 0; i < draws; ++i) {
    const SegmentResult seg = simple_path(g, {0, 1}, 8, rng);
    REQUIRE(seg.next_edge.has_value());
    if (seg.path.nodes == std::vector<int>{0, 1}) {
      CHECK(*seg.next_edge == OrientedEdge{1, 0});
      ++stop_short;
    } else {
      REQUIRE(seg.path.nodes == std::vector<int>{0, 1, 2});
      if (*seg.next_edge == OrientedEdge{2, 0})
        ++ext_pivot0;
      else if (*seg.next_edge == OrientedEdge{2, 1})
        ++ext_pivot1;
      else
        FAIL("unexpected pivot edge");
    }
  }
  // P(stop short) = 1/2, P(extend then pivot 0) = P(extend then pivot 1) = 1/4
  const double s2 = std::sqrt(draws * 0.25);
  CHECK(std::abs(stop_short - draws * 0.5) < 5 * std::sqrt(draws * 0.25));
  CHECK(std::abs(ext_pivot0 - draws * 0.25) < 5 * s2);
  CHECK(std::abs(ext_pivot1 - draws * 0.25) < 5 * s2);
}

TEST_CASE("simple_path validates inputs") {
  const Graph g = path_graph(4);
  Rng rng(3);
  CHECK_THROWS_AS(simple_path(g, {0, 2}, 4, rng), std::invalid_argument);
  CHECK_THROWS_AS(simple_path(g, {0, 1}, 0, rng), std::invalid_argument);
}

TEST_CASE("decompose_walk reproduces the worked example") {
  // nodes a..h -> 0..7; walk (c,a,e,g,a,f,a,b,h) of length 8 splits into
  // (c,a,e,g), (g,a,f), (f,a,b,h)
  const int a = 0, b = 1, c = 2, e = 3, f = 4, gg = 5, h = 6;
  const Graph host = Graph::from_edges(
      7, {{c, a}, {a, e}, {e, gg}, {gg, a}, {a, f}, {a, b}, {b, h}});
  const std::vector<int> walk{c, a, e, gg, a, f, a, b, h};
  const WalkDecomposition d = decompose_walk(host, walk);
  REQUIRE(d.segments.size() == 3);
  CHECK(d.segments[0].nodes == std::vector<int>{c, a, e, gg});
  CHECK(d.segments[1].nodes == std::vector<int>{gg, a, f});
  CHECK(d.segments[2].nodes == std::vector<int>{f, a, b, h});
  CHECK(d.segments[0].length() == 3);
  CHECK(d.segments[1].length() == 2);
  CHECK(d.segments[2].length() == 3);
  testing::check_decomposition_invariants(host, d, walk);
}

TEST_CASE("decompose_walk keeps an already-simple walk whole") {
  const Graph g = path_graph(3);
  const std::vector<int> walk{0, 1, 2};
  const WalkDecomposition d = decompose_walk(g, walk);
  REQUIRE(d.segments.size() == 1);
  CHECK(d.segments[0].nodes == walk);
}

TEST_CASE("decomposition invariants hold under fuzz") {
  const Graph g = sample_sbm(std::vector<int>{5, 5}, 0.7, 0.2, 21);
  Rng rng(99);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::int64_t L = 1 + static_cast<std::int64_t>(rng.next_below(16));
    const std::vector<int> walk = random_walk(g, L, rng);
    testing::check_decomposition_invariants(g, decompose_walk(g, walk), walk);
  }
}

TEST_CASE("streaming segments match offline decomposition in distribution") {
  // Chain simple_path under a shared budget as the solver does, and compare
  // the segment-length histogram against decompose_walk over pi-initialized
  // walks; the two laws are identical, chi^2 checks the histograms agree.
  const Graph g = sample_sbm(std::vector<int>{6, 6}, 0.6, 0.15, 8);
  const std::int64_t L = 12;
  const int iterations = 40000;

  Rng rng_stream(1001);
  std::vector<long> stream_hist(L + 1, 0);
  for (int it = 0; it < iterations; ++it) {
    OrientedEdge e = rnd_oriented_edge(g, rng_stream);
    std::int64_t remaining = L;
    while (remaining > 0) {
      const SegmentResult seg = simple_path(g, e, remaining, rng_stream);
      ++stream_hist[seg.path.length()];
      remaining -= seg.path.length();
      if (remaining > 0) e = *seg.next_edge;
    }
  }

  Rng rng_walk(2002);
  std::vector<long> offline_hist(L + 1, 0);
  for (int it = 0; it < iterations; ++it) {
    const std::vector<int> walk = random_walk(g, L, rng_walk);
    for (const SimplePath& seg : decompose_walk(g, walk).segments)
      ++offline_hist[seg.length()];
  }

  // Two-sample chi^2 for multinomials with different totals, bins pooled to
  // a joint count of at least 20.
  double total_a = 0, total_b = 0;
  for (std::int64_t len = 1; len <= L; ++len) {
    total_a += static_cast<double>(stream_hist[len]);
    total_b += static_cast<double>(offline_hist[len]);
  }
  double chi2 = 0.0;
  int bins = 0;
  double a_pool = 0, b_pool = 0;
  const auto flush = [&](bool force) {
    if (a_pool + b_pool == 0) return;
    if (!force && a_pool + b_pool < 20) return;
    const double d = total_b * a_pool - total_a * b_pool;
    chi2 += d * d / (total_a * total_b * (a_pool + b_pool));
    ++bins;
    a_pool = b_pool = 0;
  };
  for (std::int64_t len = 1; len <= L; ++len) {
    a_pool += static_cast<double>(stream_hist[len]);
    b_pool += static_cast<double>(offline_hist[len]);
    flush(false);
  }
  flush(true);
  REQUIRE(bins >= 2);
  CHECK(chi2 < testing::chi2_quantile_99(bins - 1));
}

TEST_CASE("every streamed segment passes its invariants") {
  const Graph g = sample_sbm(std::vector<int>{8, 8}, 0.5, 0.1, 4);
  Rng rng(55);
  for (int trial = 0; trial < 10000; ++trial) {
    const SegmentResult seg =
        simple_path(g, rnd_oriented_edge(g, rng), 1 + rng.next_below(10), rng);
    testing::check_simple_path_invariants(g, seg.path);
  }
}
