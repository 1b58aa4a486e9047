#include "ultrafit/lca.hpp"

#include <bit>
#include <limits>
#include <string>
#include <utility>

#include "ultrafit/error.hpp"

namespace ultrafit {

LcaIndex::LcaIndex(const Dendrogram& tree) {
  const std::size_t nodes = tree.node_count();
  if (nodes > std::numeric_limits<std::uint32_t>::max() / 2) {
    throw Error(Errc::too_large, "dendrogram too large for LCA index");
  }
  depth_.assign(nodes, 0);
  first_.assign(nodes, 0);
  tour_.reserve(2 * nodes - 1);

  // Iterative DFS; the second field counts children already visited.
  std::vector<std::pair<NodeId, int>> stack;
  stack.reserve(64);
  stack.emplace_back(tree.root(), 0);
  first_[tree.root()] = 0;
  tour_.push_back(static_cast<std::uint32_t>(tree.root()));
  while (!stack.empty()) {
    auto& [node, visited] = stack.back();
    if (tree.is_leaf(node) || visited == 2) {
      stack.pop_back();
      if (!stack.empty()) {
        tour_.push_back(static_cast<std::uint32_t>(stack.back().first));
      }
      continue;
    }
    const NodeId child = tree.children(node)[visited++];
    depth_[child] = depth_[node] + 1;
    first_[child] = static_cast<std::uint32_t>(tour_.size());
    tour_.push_back(static_cast<std::uint32_t>(child));
    stack.emplace_back(child, 0);
  }

  const std::size_t len = tour_.size();
  levels_.push_back(tour_);
  for (std::size_t width = 2; width <= len; width *= 2) {
    const auto& prev = levels_.back();
    std::vector<std::uint32_t> level(len - width + 1);
    const std::size_t half = width / 2;
    for (std::size_t i = 0; i < level.size(); ++i) {
      level[i] = shallower(prev[i], prev[i + half]);
    }
    levels_.push_back(std::move(level));
  }
}

NodeId LcaIndex::lca(NodeId a, NodeId b) const {
  if (a >= first_.size() || b >= first_.size()) {
    throw Error(Errc::node_out_of_range,
                "node " + std::to_string(a >= first_.size() ? a : b) +
                    " outside [0, " + std::to_string(first_.size()) + ")");
  }
  std::size_t lo = first_[a];
  std::size_t hi = first_[b];
  if (lo > hi) std::swap(lo, hi);
  const std::size_t span = hi - lo + 1;
  const int level = std::bit_width(span) - 1;
  const auto& row = levels_[level];
  return shallower(row[lo], row[hi + 1 - (std::size_t{1} << level)]);
}

}  // namespace ultrafit
