#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ultrafit/costs.hpp"
#include "ultrafit/graph.hpp"
#include "ultrafit/hierarchy.hpp"

namespace ultrafit {

enum class Optimizer {
  amsgrad,
  /// Plain fixed-step gradient descent; for debugging.
  gradient_descent,
};

struct FitConfig {
  CostSpec cost;
  std::size_t iterations = 150;
  double step_size = 0.1;
  Optimizer optimizer = Optimizer::amsgrad;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Not consumed by fit(), which is deterministic; forwarded to samplers
  /// (e.g. triplet generation) by callers that build the cost spec.
  std::uint64_t seed = 0;
  /// Stop early when |J_t - J_{t-1}| <= tol * |J_{t-1}|; 0 runs all iterations.
  double convergence_tol = 0.0;
  bool record_trace = true;

  /// Throws InvalidArgument on out-of-range hyperparameters or cost spec.
  void validate() const;
};

struct FitResult {
  /// Subdominant ultrametric of the optimized weights, clamped at 0.
  EdgeWeights ultrametric;
  /// Unconstrained optimization variable at the last iterate.
  EdgeWeights optimized_weights;
  /// Single-linkage dendrogram of `ultrametric`.
  Dendrogram dendrogram;
  /// Cost before each update plus the final cost (iterations + 1 entries);
  /// empty when record_trace is false.
  std::vector<double> trace;
  std::size_t iterations = 0;
  /// Number of edges whose fitted value was negative and clamped to 0.
  std::size_t clamped_edges = 0;
};

/// First-order update rule on a flat parameter vector. AMSGrad keeps the
/// running maximum of the second-moment estimate.
class AmsGrad {
 public:
  AmsGrad(std::size_t size, double step_size, double beta1 = 0.9,
          double beta2 = 0.999, double epsilon = 1e-8);

  void step(std::span<double> params, std::span<const double> grad);

 private:
  double step_size_, beta1_, beta2_, epsilon_;
  std::size_t t_ = 0;
  std::vector<double> m_, v_, v_max_;
};

/// Minimizes cost(subdominant(w~); w) over w~ starting from w~ = w.
/// Throws NonFiniteCost with the iteration index if the cost diverges.
FitResult fit(const Graph& graph, std::span<const double> weights,
              const FitConfig& config);

/// Affine rescale to [0, 1] (min -> 0, max -> 1); constant input maps to 0.
std::vector<double> normalize_trace(std::span<const double> trace);

}  // namespace ultrafit
