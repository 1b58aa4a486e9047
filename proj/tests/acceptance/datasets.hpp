#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ultrafit/graph.hpp"
#include "ultrafit/preprocessing.hpp"

namespace ultrafit::acceptance {

struct LabeledPoints {
  PointSet points;         // labels left empty (nullopt)
  std::vector<int> truth;  // class of every point
  std::size_t outlier;     // index of the isolated point
};

/// Two Gaussian blobs joined by a thin chain of points, plus one far outlier.
/// The outlier and the chain points take the class of the nearest blob centre.
LabeledPoints two_clusters_with_outlier_bridge(std::uint64_t seed,
                                               std::size_t per_cluster = 100);

/// `n` points uniform in [0, scale]^2.
PointSet uniform_square(std::uint64_t seed, std::size_t n, double scale);

/// Connected graph with exactly `m` edges on `n` vertices: a random recursive
/// tree plus distinct random chords.
Graph random_sparse_graph(std::uint64_t seed, std::size_t n, std::size_t m);

}  // namespace ultrafit::acceptance
