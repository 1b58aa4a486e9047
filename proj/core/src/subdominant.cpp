#include "ultrafit/subdominant.hpp"

#include <string>

#include "ultrafit/error.hpp"

namespace ultrafit {

SubdominantResult subdominant(const Graph& graph, std::span<const double> weights) {
  Dendrogram tree = single_linkage(graph, weights);
  LcaIndex index(tree);

  const std::size_t m = graph.edge_count();
  SubdominantResult res{&graph, EdgeWeights(m), std::vector<EdgeId>(m),
                        std::vector<NodeId>(m), std::move(tree), std::move(index)};
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& xy = graph.edge(e);
    const NodeId node = res.lca.lca(xy.source, xy.target);
    const EdgeId pass = res.dendrogram.canonical_edge(node);
    res.pass_node[e] = node;
    res.pass_edge[e] = pass;
    res.ultrametric[e] = weights[pass];
  }
  return res;
}

std::vector<double> subdominant_vjp(const SubdominantResult& res,
                                    std::span<const double> upstream) {
  if (upstream.size() != res.pass_edge.size()) {
    throw Error(Errc::length_mismatch,
                "upstream gradient has " + std::to_string(upstream.size()) +
                    " entries, expected " + std::to_string(res.pass_edge.size()));
  }
  std::vector<double> grad(upstream.size(), 0.0);
  for (EdgeId i = 0; i < upstream.size(); ++i) {
    grad[res.pass_edge[i]] += upstream[i];
  }
  return grad;
}

}  // namespace ultrafit
