#include "doctest.h"

#include <algorithm>
#include <set>

#include "support/generators.hpp"
#include "ultrafit/error.hpp"
#include "ultrafit/hierarchy.hpp"
#include "ultrafit/lca.hpp"
#include "ultrafit/oracle.hpp"
#include "ultrafit/subdominant.hpp"

using namespace ultrafit;
using namespace ultrafit::testing;

namespace {

/// Checks every structural invariant of a single-linkage dendrogram.
void check_invariants(const Graph& g, const EdgeWeights& w, const Dendrogram& t) {
  const std::size_t n = g.vertex_count();
  REQUIRE(t.leaf_count() == n);
  REQUIRE(t.node_count() == 2 * n - 1);
  CHECK(t.size(t.root()) == n);
  CHECK(t.parent(t.root()) == npos);
  std::set<EdgeId> canonical;
  std::set<std::size_t> ranks;
  for (NodeId v = 0; v < t.node_count(); ++v) {
    if (t.is_leaf(v)) {
      CHECK(t.size(v) == 1);
      continue;
    }
    const auto& c = t.children(v);
    CHECK(t.size(v) == t.size(c[0]) + t.size(c[1]));
    CHECK(t.parent(c[0]) == v);
    CHECK(t.parent(c[1]) == v);
    if (v > n) CHECK(t.altitude(v - 1) <= t.altitude(v));
    CHECK(t.altitude(v) == w[t.canonical_edge(v)]);
    canonical.insert(t.canonical_edge(v));
    ranks.insert(t.rank(v));
  }
  CHECK(canonical.size() == n - 1);
  CHECK(ranks.size() == n - 1);
  if (n > 1) {
    CHECK(*ranks.begin() == 1);
    CHECK(*ranks.rbegin() == n - 1);
  }
  // Canonical edges form a spanning tree of minimum total weight: compare
  // against an independent Prim run.
  double kruskal = 0.0;
  for (const EdgeId e : canonical) kruskal += w[e];
  std::vector<char> in(n, 0);
  std::vector<double> best(n, INFINITY);
  best[0] = 0;
  double prim = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    VertexId v = npos;
    for (VertexId j = 0; j < n; ++j) {
      if (!in[j] && (v == npos || best[j] < best[v])) v = j;
    }
    in[v] = 1;
    prim += best[v];
    for (const Incidence& inc : g.neighbors(v)) {
      if (!in[inc.neighbor]) best[inc.neighbor] = std::min(best[inc.neighbor], w[inc.edge]);
    }
  }
  CHECK(kruskal == doctest::Approx(prim));
}

std::multiset<double> altitudes(const Dendrogram& t) {
  std::multiset<double> out;
  for (NodeId v = t.leaf_count(); v < t.node_count(); ++v) out.insert(t.altitude(v));
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("hierarchy");

TEST_CASE("single linkage on the four-vertex example") {
  const Graph g = four_vertex_graph();
  const Dendrogram t = single_linkage(g, kFourVertexWeights);
  check_invariants(g, kFourVertexWeights, t);

  // n1 = {x1, x2} at r1, n2 = {x3, x4} at r2, root at r3.
  CHECK(t.children(4) == std::array<NodeId, 2>{0, 1});
  CHECK(t.altitude(4) == 1.0);
  CHECK(t.canonical_edge(4) == 0);
  CHECK(t.children(5) == std::array<NodeId, 2>{2, 3});
  CHECK(t.altitude(5) == 2.0);
  CHECK(t.canonical_edge(5) == 2);
  CHECK(t.altitude(6) == 3.0);
  // Both weight-3 edges are valid; ties resolve to the lower edge id.
  CHECK(t.canonical_edge(6) == 1);
  CHECK(t.rank(6) == 1);
  CHECK(t.rank(5) == 2);
  CHECK(t.rank(4) == 3);
}

TEST_CASE("single linkage on the triangle") {
  const Graph g = triangle();
  const EdgeWeights w{1, 2, 3};
  const Dendrogram t = single_linkage(g, w);
  check_invariants(g, w, t);
  CHECK(t.children(3) == std::array<NodeId, 2>{0, 1});
  CHECK(t.altitude(3) == 1.0);
  CHECK(t.canonical_edge(3) == 0);
  CHECK(t.children(4) == std::array<NodeId, 2>{3, 2});
  CHECK(t.altitude(4) == 2.0);
  CHECK(t.canonical_edge(4) == 1);
}

TEST_CASE("single linkage on one edge and one vertex") {
  const std::vector<Edge> one{{0, 1}};
  const Graph g = Graph::build(2, one);
  const Dendrogram t = single_linkage(g, EdgeWeights{5});
  CHECK(t.internal_count() == 1);
  CHECK(t.altitude(2) == 5.0);
  CHECK(t.size(2) == 2);

  const Graph lone = Graph::build(1, std::vector<Edge>{});
  const Dendrogram s = single_linkage(lone, EdgeWeights{});
  CHECK(s.node_count() == 1);
  CHECK(s.root() == 0);
  CHECK(cut_to_k_clusters(s, 1) == std::vector<std::size_t>{0});
}

TEST_CASE("single linkage accepts negative weights and rejects bad input") {
  const Graph g = triangle();
  const Dendrogram t = single_linkage(g, EdgeWeights{-1, -3, 2});
  CHECK(t.altitude(3) == -3.0);
  CHECK(t.altitude(4) == -1.0);
  CHECK_THROWS_AS(single_linkage(g, EdgeWeights{1, 2}), Error);
  CHECK_THROWS_AS(single_linkage(g, EdgeWeights{1, NAN, 2}), Error);
}

TEST_CASE("node attributes") {
  const NodeAttributes fig = node_attributes(single_linkage(four_vertex_graph(), kFourVertexWeights));
  CHECK(fig.min_child_size[4] == 1);
  CHECK(fig.min_child_size[5] == 1);
  CHECK(fig.min_child_size[6] == 2);

  const NodeAttributes tri = node_attributes(single_linkage(triangle(), EdgeWeights{1, 2, 3}));
  CHECK(tri.min_child_size[3] == 1);
  CHECK(tri.min_child_size[4] == 1);

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_connected_graph(rng, 2 + trial, 0.2);
    const Dendrogram t = single_linkage(g, uniform_weights(rng, g.edge_count()));
    const NodeAttributes a = node_attributes(t);
    for (NodeId v = t.leaf_count(); v < t.node_count(); ++v) {
      CHECK(a.min_child_size[v] >= 1);
      CHECK(2 * a.min_child_size[v] <= t.size(v));
    }
  }
}

TEST_CASE("ancestor chains reach the root within N-1 steps") {
  Rng rng(4);
  const Graph g = random_connected_graph(rng, 40, 0.1);
  const Dendrogram t = single_linkage(g, uniform_weights(rng, g.edge_count()));
  for (NodeId x = 0; x < t.leaf_count(); ++x) {
    std::size_t steps = 0;
    NodeId y = x;
    while (t.parent(y) != npos) {
      y = t.parent(y);
      ++steps;
    }
    CHECK(y == t.root());
    CHECK(steps <= t.leaf_count() - 1);
  }
}

TEST_CASE("cut to k clusters") {
  const Dendrogram t = single_linkage(four_vertex_graph(), kFourVertexWeights);
  CHECK(cut_to_k_clusters(t, 2) == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(cut_to_k_clusters(t, 1) == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(cut_to_k_clusters(t, 4) == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(cut_to_k_clusters(t, 3) == std::vector<std::size_t>{0, 0, 1, 2});
  CHECK_THROWS_AS(cut_to_k_clusters(t, 0), Error);
  CHECK_THROWS_AS(cut_to_k_clusters(t, 5), Error);

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = random_connected_graph(rng, 3 + trial, 0.2);
    const Dendrogram d = single_linkage(g, uniform_weights(rng, g.edge_count()));
    for (std::size_t k = 1; k <= d.leaf_count(); ++k) {
      const auto labels = cut_to_k_clusters(d, k);
      CHECK(*std::max_element(labels.begin(), labels.end()) == k - 1);
      CHECK(labels[0] == 0);
      // First appearances are in increasing label order.
      std::size_t seen = 0;
      for (const std::size_t l : labels) {
        CHECK(l <= seen);
        if (l == seen) ++seen;
      }
    }
  }
}

TEST_CASE("lca altitudes reconstruct min-max distances of ultrametrics") {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_connected_graph(rng, 2 + trial % 6, 0.5);
    const EdgeWeights u = subdominant(g, tie_heavy_weights(rng, g.edge_count(), 4)).ultrametric;
    const Dendrogram t = single_linkage(g, u);
    const LcaIndex idx(t);
    const auto d = oracle::minmax_bruteforce(g, u);
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
      for (VertexId y = x + 1; y < g.vertex_count(); ++y) {
        CHECK(t.altitude(idx.lca(x, y)) == d(x, y));
      }
    }
  }
}

TEST_CASE("permuting equal-weight edges keeps the altitude multiset") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_connected_graph(rng, 3 + trial % 15, 0.4);
    const EdgeWeights w = tie_heavy_weights(rng, g.edge_count(), 3);
    // Rebuild the same graph with a shuffled edge order.
    std::vector<EdgeId> perm(g.edge_count());
    std::iota(perm.begin(), perm.end(), EdgeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    EdgeWeights pw;
    for (const EdgeId e : perm) {
      edges.push_back(g.edge(e));
      pw.push_back(w[e]);
    }
    const Graph h = Graph::build(g.vertex_count(), edges);
    CHECK(altitudes(single_linkage(g, w)) == altitudes(single_linkage(h, pw)));
  }
}

TEST_CASE("altitudes are a subset of the input weights") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_connected_graph(rng, 2 + trial, 0.2);
    const EdgeWeights w = uniform_weights(rng, g.edge_count());
    const std::set<double> values(w.begin(), w.end());
    for (const double a : altitudes(single_linkage(g, w))) CHECK(values.count(a) == 1);
  }
}

TEST_CASE("from_merges validation") {
  using M = Dendrogram::Merge;
  CHECK_NOTHROW(Dendrogram::from_merges(3, std::vector<M>{{0, 1, 1.0}, {3, 2, 2.0}}));
  CHECK_THROWS_AS(Dendrogram::from_merges(3, std::vector<M>{{0, 1, 1.0}}), Error);
  CHECK_THROWS_AS(Dendrogram::from_merges(3, std::vector<M>{{0, 1, 1.0}, {0, 2, 2.0}}), Error);
  CHECK_THROWS_AS(Dendrogram::from_merges(3, std::vector<M>{{0, 4, 1.0}, {3, 2, 2.0}}), Error);
  CHECK_THROWS_AS(Dendrogram::from_merges(3, std::vector<M>{{0, 1, 2.0}, {3, 2, 1.0}}), Error);
  CHECK_THROWS_AS(Dendrogram::from_merges(3, std::vector<M>{{1, 1, 1.0}, {3, 2, 2.0}}), Error);
}

TEST_SUITE_END();
