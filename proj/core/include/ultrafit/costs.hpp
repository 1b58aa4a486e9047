#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ultrafit/subdominant.hpp"

namespace ultrafit {

/// Value of a cost term and its gradient with respect to the ultrametric u
/// (edge-indexed). Every structural quantity of the dendrogram (lca nodes,
/// pass edges, sizes, ranks) is treated as a constant.
struct CostValue {
  double value = 0.0;
  std::vector<double> gradient;
};

struct Triplet {
  VertexId ref;
  VertexId pos;
  VertexId neg;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

using TripletSet = std::vector<Triplet>;

/// top_k value that applies the cluster-size penalty to every node.
inline constexpr std::size_t kAllNodes = npos;

/// Sum of squared differences between u and the reference weights.
CostValue cost_closest(const SubdominantResult& res,
                       std::span<const double> reference);

/// Sum over edges of u(e) / gamma(pass node), restricted to edges whose pass
/// node has rank <= top_k; gamma is the size of the node's smallest child.
CostValue cost_cluster_size(const SubdominantResult& res,
                            std::size_t top_k = 10);

/// Hinge max(0, margin + d(ref, pos) - d(ref, neg)) summed over triplets,
/// where d is read on the pass edge of each pair. The sub-gradient at a hinge
/// value of exactly zero is taken as 0.
CostValue cost_triplet(const SubdominantResult& res,
                       std::span<const Triplet> triplets, double margin);

/// Soft cardinal of every internal node, indexed by node id (leaves hold 1).
///
/// For node n with canonical edge {x1, x2} and l(t) = sigmoid(t / temperature):
///   card(n) = 1/2 sum_{x in {x1,x2}} ( l(u(n)) + sum_{y ancestor of x}
///             |other child of y| * l(u(n) - u(y)) )
/// with u(.) the ultrametric value on a node's canonical edge. Cost is
/// proportional to the summed depth of the canonical-edge extremities.
std::vector<double> soft_cardinal(const SubdominantResult& res,
                                  double temperature);

/// Sum over edges of card(pass node) / reference(e). Throws NonpositiveWeight
/// if a reference weight is <= 0.
CostValue cost_dasgupta(const SubdominantResult& res,
                        std::span<const double> reference, double temperature = 1.0);

struct ClosestTerm {};
struct ClusterSizeTerm {
  std::size_t top_k = 10;
};
struct TripletTerm {
  TripletSet triplets;
  double margin = 10.0;
};
struct DasguptaTerm {
  double temperature = 1.0;
};

using CostTerm = std::variant<ClosestTerm, ClusterSizeTerm, TripletTerm, DasguptaTerm>;

struct WeightedTerm {
  CostTerm term;
  double weight = 1.0;
};

struct CostSpec {
  std::vector<WeightedTerm> terms;

  /// Throws InvalidArgument on an empty spec, a negative or non-finite
  /// weight, a non-positive margin or temperature, or ref == neg.
  void validate() const;
};

/// Weighted sum of the terms of `spec`. Terms with weight 0 are skipped.
/// `reference` is the input dissimilarity used by Closest and Dasgupta.
CostValue cost_composite(const CostSpec& spec, const SubdominantResult& res,
                         std::span<const double> reference);

}  // namespace ultrafit
