#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ultrafit/graph.hpp"

namespace ultrafit {

using NodeId = std::size_t;

/// Rooted binary merge tree over the vertices of a graph.
///
/// Nodes 0..N-1 are leaves (one per vertex); node N+i is created by the i-th
/// merge, so children always have smaller ids than their parent and internal
/// node altitudes are non-decreasing in id order. Every internal node records
/// the edge whose processing created it (its canonical edge); dendrograms not
/// produced by single linkage may leave it at npos.
class Dendrogram {
 public:
  struct Merge {
    NodeId first;
    NodeId second;
    double altitude;
    EdgeId canonical_edge = npos;
  };

  /// Builds a dendrogram from N-1 merges. Throws InvalidArgument if a child
  /// is reused or not yet created, or altitudes decrease.
  static Dendrogram from_merges(std::size_t leaf_count,
                                std::span<const Merge> merges);

  std::size_t leaf_count() const noexcept { return leaf_count_; }
  std::size_t node_count() const noexcept { return parent_.size(); }
  std::size_t internal_count() const noexcept { return leaf_count_ - 1; }
  NodeId root() const noexcept { return node_count() - 1; }

  bool is_leaf(NodeId n) const noexcept { return n < leaf_count_; }

  /// npos for the root.
  NodeId parent(NodeId n) const { return parent_[n]; }
  /// The other child of parent(n); npos for the root.
  NodeId sibling(NodeId n) const;
  const std::array<NodeId, 2>& children(NodeId n) const {
    return merges_[n - leaf_count_].children;
  }

  /// Leaf count of the subtree rooted in n.
  std::size_t size(NodeId n) const { return size_[n]; }

  // The accessors below take internal nodes only.
  double altitude(NodeId n) const { return merges_[n - leaf_count_].altitude; }
  EdgeId canonical_edge(NodeId n) const {
    return merges_[n - leaf_count_].canonical_edge;
  }
  /// 1 for the root, 2 for the next-highest node, and so on. Equal altitudes
  /// rank the later-created node first.
  std::size_t rank(NodeId n) const { return node_count() - n; }

 private:
  struct Internal {
    std::array<NodeId, 2> children;
    double altitude;
    EdgeId canonical_edge;
  };

  Dendrogram() = default;

  std::size_t leaf_count_ = 0;
  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
  std::vector<Internal> merges_;
};

/// Single-linkage dendrogram of (graph, weights): Kruskal over edges sorted
/// by weight, ties in ascending edge id. Each merge records the minimum
/// spanning tree edge that triggered it. Negative weights are accepted.
Dendrogram single_linkage(const Graph& graph, std::span<const double> weights);

struct NodeAttributes {
  /// Size of the smallest child, indexed by node id; 0 for leaves.
  std::vector<std::size_t> min_child_size;
};

NodeAttributes node_attributes(const Dendrogram& tree);

/// Flat clustering obtained by deleting the k-1 highest-ranked internal
/// nodes. Labels are 0..k-1, numbered by the smallest vertex of each cluster.
/// Throws KOutOfRange unless 1 <= k <= N.
std::vector<std::size_t> cut_to_k_clusters(const Dendrogram& tree,
                                           std::size_t k);

}  // namespace ultrafit
