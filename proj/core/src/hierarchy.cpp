#include "ultrafit/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ultrafit/error.hpp"

namespace ultrafit {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), node_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    std::iota(node_.begin(), node_.end(), NodeId{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  /// Unites two distinct roots; the surviving root carries `node`.
  void unite(std::size_t a, std::size_t b, NodeId node) {
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    node_[a] = node;
  }

  NodeId node(std::size_t root) const { return node_[root]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<NodeId> node_;  // dendrogram node of each root's cluster
};

}  // namespace

Dendrogram Dendrogram::from_merges(std::size_t leaf_count,
                                   std::span<const Merge> merges) {
  if (leaf_count == 0) {
    throw Error(Errc::invalid_argument, "dendrogram needs at least one leaf");
  }
  if (merges.size() != leaf_count - 1) {
    throw Error(Errc::invalid_argument,
                "expected " + std::to_string(leaf_count - 1) +
                    " merges, got " + std::to_string(merges.size()));
  }
  Dendrogram t;
  t.leaf_count_ = leaf_count;
  const std::size_t nodes = 2 * leaf_count - 1;
  t.parent_.assign(nodes, npos);
  t.size_.assign(nodes, 1);
  t.merges_.reserve(merges.size());
  for (std::size_t i = 0; i < merges.size(); ++i) {
    const Merge& m = merges[i];
    const NodeId self = leaf_count + i;
    if (m.first == m.second) {
      throw Error(Errc::invalid_argument,
                  "merge " + std::to_string(i) + " joins a node with itself");
    }
    for (const NodeId c : {m.first, m.second}) {
      if (c >= self || t.parent_[c] != npos) {
        throw Error(Errc::invalid_argument,
                    "merge " + std::to_string(i) + " uses invalid child " +
                        std::to_string(c));
      }
      t.parent_[c] = self;
    }
    if (!std::isfinite(m.altitude)) {
      throw Error(Errc::non_finite_value,
                  "merge " + std::to_string(i) + " has non-finite altitude");
    }
    if (i > 0 && m.altitude < merges[i - 1].altitude) {
      throw Error(Errc::invalid_argument,
                  "merge " + std::to_string(i) + " has decreasing altitude");
    }
    t.size_[self] = t.size_[m.first] + t.size_[m.second];
    t.merges_.push_back({{m.first, m.second}, m.altitude, m.canonical_edge});
  }
  return t;
}

NodeId Dendrogram::sibling(NodeId n) const {
  const NodeId p = parent_[n];
  if (p == npos) return npos;
  const auto& c = children(p);
  return c[0] == n ? c[1] : c[0];
}

Dendrogram single_linkage(const Graph& graph, std::span<const double> weights) {
  check_length(graph, weights);
  check_finite(weights);

  const std::size_t n = graph.vertex_count();
  std::vector<EdgeId> order(graph.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return weights[a] < weights[b];
  });

  UnionFind uf(n);
  std::vector<Dendrogram::Merge> merges;
  merges.reserve(n - 1);
  for (const EdgeId e : order) {
    const std::size_t a = uf.find(graph.edge(e).source);
    const std::size_t b = uf.find(graph.edge(e).target);
    if (a == b) continue;
    const NodeId created = n + merges.size();
    merges.push_back({uf.node(a), uf.node(b), weights[e], e});
    uf.unite(a, b, created);
    if (merges.size() == n - 1) break;
  }
  return Dendrogram::from_merges(n, merges);
}

NodeAttributes node_attributes(const Dendrogram& tree) {
  NodeAttributes attrs;
  attrs.min_child_size.assign(tree.node_count(), 0);
  for (NodeId n = tree.leaf_count(); n < tree.node_count(); ++n) {
    const auto& c = tree.children(n);
    attrs.min_child_size[n] = std::min(tree.size(c[0]), tree.size(c[1]));
  }
  return attrs;
}

std::vector<std::size_t> cut_to_k_clusters(const Dendrogram& tree,
                                           std::size_t k) {
  const std::size_t n = tree.leaf_count();
  if (k < 1 || k > n) {
    throw Error(Errc::k_out_of_range, "k = " + std::to_string(k) +
                                          " outside [1, " + std::to_string(n) +
                                          "]");
  }
  // Nodes with id >= first_removed are exactly the ranks 1..k-1.
  const NodeId first_removed = tree.node_count() - (k - 1);
  std::vector<NodeId> component(tree.node_count(), npos);
  for (NodeId v = first_removed; v-- > 0;) {
    const NodeId p = tree.parent(v);
    component[v] = (p == npos || p >= first_removed) ? v : component[p];
  }
  std::vector<std::size_t> label_of(tree.node_count(), npos);
  std::vector<std::size_t> labels(n);
  std::size_t next = 0;
  for (VertexId x = 0; x < n; ++x) {
    std::size_t& l = label_of[component[x]];
    if (l == npos) l = next++;
    labels[x] = l;
  }
  return labels;
}

}  // namespace ultrafit
