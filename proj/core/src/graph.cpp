#include "ultrafit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ultrafit/error.hpp"
#include "ultrafit/subdominant.hpp"

namespace ultrafit {

namespace {

std::string describe(EdgeId id, const Edge& e) {
  return "edge " + std::to_string(id) + " (" + std::to_string(e.source) + ", " +
         std::to_string(e.target) + ")";
}

}  // namespace

Graph Graph::build(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count == 0) {
    throw Error(Errc::invalid_argument, "graph must have at least one vertex");
  }

  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    if (e.source >= vertex_count || e.target >= vertex_count) {
      const VertexId bad = e.source >= vertex_count ? e.source : e.target;
      throw Error(Errc::vertex_out_of_range,
                  describe(id, e) + " references vertex " + std::to_string(bad) +
                      " outside [0, " + std::to_string(vertex_count) + ")");
    }
    if (e.source == e.target) {
      throw Error(Errc::self_loop, describe(id, e) + " is a self-loop");
    }
  }

  // Sort (min, max, id) keys to find duplicate unordered pairs.
  struct Key {
    VertexId lo, hi;
    EdgeId id;
  };
  std::vector<Key> keys;
  keys.reserve(edges.size());
  for (EdgeId id = 0; id < edges.size(); ++id) {
    keys.push_back({std::min(edges[id].source, edges[id].target),
                    std::max(edges[id].source, edges[id].target), id});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.hi != b.hi) return a.hi < b.hi;
    return a.id < b.id;
  });
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i].lo == keys[i - 1].lo && keys[i].hi == keys[i - 1].hi) {
      throw Error(Errc::duplicate_edge,
                  describe(keys[i].id, edges[keys[i].id]) + " duplicates edge " +
                      std::to_string(keys[i - 1].id));
    }
  }

  Graph g;
  g.vertex_count_ = vertex_count;
  g.edges_.assign(edges.begin(), edges.end());
  g.offsets_.assign(vertex_count + 1, 0);
  for (const Edge& e : edges) {
    ++g.offsets_[e.source + 1];
    ++g.offsets_[e.target + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    g.offsets_[v + 1] += g.offsets_[v];
  }
  g.incidences_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    g.incidences_[cursor[e.source]++] = {e.target, id};
    g.incidences_[cursor[e.target]++] = {e.source, id};
  }

  std::vector<char> seen(vertex_count, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.neighbors(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  if (reached != vertex_count) {
    const auto it = std::find(seen.begin(), seen.end(), 0);
    throw Error(Errc::disconnected,
                "graph is disconnected: vertex " +
                    std::to_string(it - seen.begin()) +
                    " is not reachable from vertex 0");
  }
  return g;
}

void check_length(const Graph& graph, std::span<const double> weights) {
  if (weights.size() != graph.edge_count()) {
    throw Error(Errc::length_mismatch,
                "weight vector has " + std::to_string(weights.size()) +
                    " entries but the graph has " +
                    std::to_string(graph.edge_count()) + " edges");
  }
}

void check_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(Errc::non_finite_value,
                  "non-finite value at index " + std::to_string(i));
    }
  }
}

bool is_ultrametric(const Graph& graph, std::span<const double> u,
                    double tolerance) {
  check_length(graph, u);
  const SubdominantResult res = subdominant(graph, u);
  for (EdgeId e = 0; e < u.size(); ++e) {
    if (std::abs(u[e] - res.ultrametric[e]) > tolerance) return false;
  }
  return true;
}

}  // namespace ultrafit
