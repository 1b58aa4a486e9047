#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ultrafit/hierarchy.hpp"

namespace ultrafit {

/// Constant-time lowest common ancestor queries on a dendrogram.
///
/// Euler tour of the tree plus a sparse table of range-minimum positions over
/// the tour depths: O(N log N) preprocessing and memory, O(1) per query.
/// Read-only after construction.
class LcaIndex {
 public:
  explicit LcaIndex(const Dendrogram& tree);

  /// Deepest node whose subtree contains both a and b. Throws NodeOutOfRange.
  NodeId lca(NodeId a, NodeId b) const;

  std::size_t node_count() const noexcept { return first_.size(); }
  std::span<const std::uint32_t> euler_tour() const noexcept { return tour_; }
  std::uint32_t depth(NodeId n) const { return depth_[n]; }

 private:
  std::uint32_t shallower(std::uint32_t a, std::uint32_t b) const {
    return depth_[a] <= depth_[b] ? a : b;
  }

  std::vector<std::uint32_t> tour_;
  std::vector<std::uint32_t> depth_;  // per node
  std::vector<std::uint32_t> first_;  // first tour position per node
  // levels_[j][i] = shallowest node in tour_[i .. i + 2^j).
  std::vector<std::vector<std::uint32_t>> levels_;
};

inline LcaIndex build_lca(const Dendrogram& tree) { return LcaIndex(tree); }

}  // namespace ultrafit
