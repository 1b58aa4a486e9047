#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace ultrafit {

using VertexId = std::size_t;
using EdgeId = std::size_t;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Edge {
  VertexId source;
  VertexId target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

/// Edge-indexed real values: input dissimilarities, optimization variables
/// and ultrametrics all use this representation. Entry i belongs to edge i.
using EdgeWeights = std::vector<double>;

/// Immutable, connected, simple undirected graph. Edge ids are the positions
/// of the edges in the construction input and never change afterwards.
class Graph {
 public:
  /// Throws Error with SelfLoop, DuplicateEdge, VertexOutOfRange or
  /// Disconnected; the message names the offending edge or vertex.
  static Graph build(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Incidence> neighbors(VertexId v) const {
    return {incidences_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

 private:
  Graph() = default;

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  // CSR adjacency: incidences_[offsets_[v] .. offsets_[v+1]) belong to v.
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidences_;
};

inline Graph build_graph(std::size_t vertex_count, std::span<const Edge> edges) {
  return Graph::build(vertex_count, edges);
}

/// Throws LengthMismatch unless weights has one entry per edge.
void check_length(const Graph& graph, std::span<const double> weights);

/// Throws NonFiniteValue on the first NaN or infinite entry.
void check_finite(std::span<const double> values);

/// True iff u is a fixed point of the subdominant operator up to `tolerance`
/// in the max norm, which is equivalent to the cycle condition
/// u(e) <= max over C \ {e} of u for every cycle C through e.
bool is_ultrametric(const Graph& graph, std::span<const double> u,
                    double tolerance = 0.0);

}  // namespace ultrafit
