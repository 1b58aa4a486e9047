#include "ultrafit/preprocessing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "ultrafit/error.hpp"

namespace ultrafit {

namespace {

constexpr std::size_t kMaxPoints = 10000;

double distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

WeightedGraph knn_mst_graph(const PointSet& points, std::size_t k) {
  const std::size_t n = points.size();
  if (points.dimension == 0 || points.coordinates.size() % points.dimension != 0) {
    throw Error(Errc::invalid_argument, "malformed point set");
  }
  if (n > kMaxPoints) {
    throw Error(Errc::too_large, std::to_string(n) + " points exceed the limit of " +
                                     std::to_string(kMaxPoints));
  }
  if (n < 2 || k < 1 || k >= n) {
    throw Error(Errc::k_out_of_range, "k = " + std::to_string(k) +
                                          " must satisfy 1 <= k < N = " +
                                          std::to_string(n));
  }
  check_finite(points.coordinates);

  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[i * n + j] = dist[j * n + i] = distance(points.point(i), points.point(j));
    }
  }

  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(n * (k + 1));
  std::vector<VertexId> others(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others[c++] = j;
    }
    // Ties broken by vertex id so the neighbor set is deterministic.
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k),
                      others.end(), [&](VertexId a, VertexId b) {
                        const double da = dist[i * n + a];
                        const double db = dist[i * n + b];
                        return da < db || (da == db && a < b);
                      });
    for (std::size_t r = 0; r < k; ++r) {
      pairs.emplace_back(std::min(i, others[r]), std::max(i, others[r]));
    }
  }

  // Prim on the complete graph.
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<VertexId> from(n, npos);
  std::vector<char> in_tree(n, 0);
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    VertexId v = npos;
    for (VertexId j = 0; j < n; ++j) {
      if (!in_tree[j] && (v == npos || best[j] < best[v])) v = j;
    }
    if (v == npos) break;
    in_tree[v] = 1;
    if (from[v] != npos) pairs.emplace_back(std::min(v, from[v]), std::max(v, from[v]));
    for (VertexId j = 0; j < n; ++j) {
      if (!in_tree[j] && dist[v * n + j] < best[j]) {
        best[j] = dist[v * n + j];
        from[j] = v;
      }
    }
  }

  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<Edge> edges;
  EdgeWeights weights;
  edges.reserve(pairs.size());
  weights.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    edges.push_back({a, b});
    weights.push_back(dist[a * n + b]);
  }
  return {Graph::build(n, edges), std::move(weights)};
}

TripletSet sample_triplets(std::span<const ClassLabel> labels, std::size_t count,
                           std::uint64_t seed) {
  std::map<int, std::vector<VertexId>> classes;
  std::vector<VertexId> labeled;
  for (VertexId v = 0; v < labels.size(); ++v) {
    if (labels[v]) {
      classes[*labels[v]].push_back(v);
      labeled.push_back(v);
    }
  }
  if (count == 0) return {};
  if (classes.size() < 2) {
    throw Error(Errc::insufficient_classes,
                "triplet sampling needs at least two labeled classes, found " +
                    std::to_string(classes.size()));
  }

  // Each ref admits (|class| - 1) * (labeled - |class|) valid triples; picking
  // ref with that weight and then pos, neg uniformly is uniform over triples.
  std::vector<double> ref_weight(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    const std::size_t same = classes[*labels[labeled[i]]].size();
    ref_weight[i] = static_cast<double>(same - 1) *
                    static_cast<double>(labeled.size() - same);
  }
  if (std::all_of(ref_weight.begin(), ref_weight.end(),
                  [](double w) { return w == 0.0; })) {
    throw Error(Errc::insufficient_classes,
                "no class has two labeled points; no valid triplet exists");
  }

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick_ref(ref_weight.begin(), ref_weight.end());
  TripletSet out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const VertexId ref = labeled[pick_ref(rng)];
    const int cls = *labels[ref];
    const auto& same = classes[cls];
    std::uniform_int_distribution<std::size_t> pick_pos(0, same.size() - 2);
    std::size_t p = pick_pos(rng);
    if (same[p] == ref) p = same.size() - 1;  // skip ref itself
    // Unordered pick among labeled points outside the class.
    std::uniform_int_distribution<std::size_t> pick_neg(0, labeled.size() - same.size() - 1);
    std::size_t r = pick_neg(rng);
    VertexId neg = npos;
    for (const VertexId v : labeled) {
      if (*labels[v] == cls) continue;
      if (r-- == 0) {
        neg = v;
        break;
      }
    }
    out.push_back({ref, same[p], neg});
  }
  return out;
}

}  // namespace ultrafit
