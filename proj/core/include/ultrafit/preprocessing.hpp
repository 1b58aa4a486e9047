#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ultrafit/costs.hpp"
#include "ultrafit/graph.hpp"

namespace ultrafit {

using ClassLabel = std::optional<int>;

/// N points in R^d stored row-major, with an optional class per point.
struct PointSet {
  std::size_t dimension = 0;
  std::vector<double> coordinates;
  /// Empty, or one entry per point (nullopt for unlabeled points).
  std::vector<ClassLabel> labels;

  std::size_t size() const noexcept {
    return dimension == 0 ? 0 : coordinates.size() / dimension;
  }
  std::span<const double> point(std::size_t i) const {
    return {coordinates.data() + i * dimension, dimension};
  }
};

struct WeightedGraph {
  Graph graph;
  EdgeWeights weights;
};

/// Symmetrized k-nearest-neighbor graph (an edge exists if either endpoint
/// lists the other) united with the Euclidean minimum spanning tree of the
/// complete point cloud. Edges are ordered by (min vertex, max vertex) and
/// weighted by Euclidean distance. O(N^2 d); throws TooLarge above 10^4
/// points and KOutOfRange unless 1 <= k < N.
WeightedGraph knn_mst_graph(const PointSet& points, std::size_t k);

/// Uniform sample, with replacement, of (ref, pos, neg) with
/// class(ref) == class(pos), ref != pos and class(neg) != class(ref).
/// Unlabeled points never participate. Throws InsufficientClasses when no such
/// triple exists and count > 0.
TripletSet sample_triplets(std::span<const ClassLabel> labels, std::size_t count,
                           std::uint64_t seed);

}  // namespace ultrafit
