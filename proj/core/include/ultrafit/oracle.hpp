#pragma once

// Slow, direct reference implementations used to cross-check the fast
// algorithms in tests and acceptance runs. Not intended for production use.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ultrafit/graph.hpp"
#include "ultrafit/hierarchy.hpp"
#include "ultrafit/subdominant.hpp"

namespace ultrafit::oracle {

struct DistanceMatrix {
  std::size_t size = 0;
  std::vector<double> values;  // row-major

  double operator()(VertexId x, VertexId y) const { return values[x * size + y]; }
};

/// All-pairs min-max path distance by widest-path dynamic programming
/// (Floyd-Warshall over (min, max)). d(x, x) = 0. N <= 512, else TooLarge.
DistanceMatrix minmax_bruteforce(const Graph& graph, std::span<const double> weights);

/// Literal cycle condition: for every simple cycle C and e in C,
/// u(e) <= max_{e' in C \ {e}} u(e') + tolerance. N <= 8, else TooLarge.
bool ultrametric_cycle_check(const Graph& graph, std::span<const double> u,
                             double tolerance = 0.0);

struct ClosestOptimum {
  EdgeWeights ultrametric;
  double cost = 0.0;
};

/// Global minimizer of sum_e (u(e) - w(e))^2 over ultrametrics on the graph.
///
/// Enumerates every merge sequence over V (hence every binary dendrogram),
/// assigns each edge to the lca of its extremities and solves the
/// altitude problem exactly: per-node means of the assigned weights, subject
/// to child <= parent, by enumerating which parent-child constraints are tight
/// and keeping the best feasible candidate. N <= 6, else TooLarge.
ClosestOptimum closest_ultrametric_exhaustive(const Graph& graph,
                                              std::span<const double> weights);

/// Graph average linkage: repeatedly merges the adjacent pair of clusters with
/// the smallest mean weight over the edges joining them. Ties go to the
/// lexicographically smallest pair of node ids. Canonical edges are npos.
Dendrogram average_linkage(const Graph& graph, std::span<const double> weights);

/// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> finite_difference_grad(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x, double h);

/// Soft cardinal computed from its definition: for node n with canonical edge
/// {x1, x2}, 1/2 sum_x sum_{y in V} sigmoid((alt(n) - d(x, y)) / temperature),
/// with d the brute-force min-max distance on res.ultrametric. Indexed by node
/// id, leaves hold 1.
std::vector<double> soft_cardinal_direct(const SubdominantResult& res,
                                         double temperature);

}  // namespace ultrafit::oracle
