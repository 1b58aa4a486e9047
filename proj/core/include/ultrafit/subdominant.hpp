#pragma once

#include <span>
#include <vector>

#include "ultrafit/graph.hpp"
#include "ultrafit/hierarchy.hpp"
#include "ultrafit/lca.hpp"

namespace ultrafit {

/// Forward pass of the min-max (subdominant ultrametric) operator, with the
/// structure needed by the backward pass and by the cost terms.
///
/// `graph` is not owned; the result must not outlive it.
struct SubdominantResult {
  const Graph* graph = nullptr;
  /// Min-max distance between the extremities of each edge.
  EdgeWeights ultrametric;
  /// Edge id of the pass edge of each edge; always a spanning-tree edge.
  std::vector<EdgeId> pass_edge;
  /// lca of the extremities of each edge in `dendrogram`.
  std::vector<NodeId> pass_node;
  Dendrogram dendrogram;
  LcaIndex lca;
};

/// u(e_xy) = w(canonical_edge(lca(x, y))) on the single-linkage dendrogram of
/// (graph, weights). O(M log M).
SubdominantResult subdominant(const Graph& graph, std::span<const double> weights);
// The result points at the graph, so it must outlive the call.
SubdominantResult subdominant(Graph&& graph, std::span<const double> weights) = delete;

/// Vector-Jacobian product of the operator with the tree held fixed: scatters
/// upstream[i] onto pass_edge[i].
std::vector<double> subdominant_vjp(const SubdominantResult& res,
                                    std::span<const double> upstream);

}  // namespace ultrafit
