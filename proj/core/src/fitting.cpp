#include "ultrafit/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ultrafit/error.hpp"
#include "ultrafit/subdominant.hpp"

namespace ultrafit {

void FitConfig::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw Error(Errc::invalid_argument, "step size must be positive");
  }
  if (iterations < 1) {
    throw Error(Errc::invalid_argument, "iterations must be >= 1");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw Error(Errc::invalid_argument, "Adam moments must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) {
    throw Error(Errc::invalid_argument, "epsilon must be positive");
  }
  if (!(convergence_tol >= 0.0)) {
    throw Error(Errc::invalid_argument, "convergence tolerance must be >= 0");
  }
  cost.validate();
}

AmsGrad::AmsGrad(std::size_t size, double step_size, double beta1, double beta2,
                 double epsilon)
    : step_size_(step_size),
      beta1_(beta1),
      beta2_(beta2),
      epsilon_(epsilon),
      m_(size, 0.0),
      v_(size, 0.0),
      v_max_(size, 0.0) {}

void AmsGrad::step(std::span<double> params, std::span<const double> grad) {
  ++t_;
  const double bias1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bias2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  const double lr = step_size_ / bias1;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g * g;
    v_max_[i] = std::max(v_max_[i], v_[i]);
    params[i] -= lr * m_[i] / (std::sqrt(v_max_[i] / bias2) + epsilon_);
  }
}

FitResult fit(const Graph& graph, std::span<const double> weights,
              const FitConfig& config) {
  config.validate();
  check_length(graph, weights);
  check_finite(weights);

  EdgeWeights current(weights.begin(), weights.end());
  AmsGrad adam(current.size(), config.step_size, config.beta1, config.beta2,
               config.epsilon);

  FitResult out{{}, {}, single_linkage(graph, weights), {}, 0, 0};
  if (config.record_trace) out.trace.reserve(config.iterations + 1);

  auto evaluate = [&](std::size_t iteration) {
    SubdominantResult res = subdominant(graph, current);
    CostValue cost = cost_composite(config.cost, res, weights);
    if (!std::isfinite(cost.value)) {
      throw Error(Errc::non_finite_cost,
                  "cost is not finite at iteration " + std::to_string(iteration));
    }
    return std::pair{std::move(res), std::move(cost)};
  };

  double previous = 0.0;
  for (std::size_t it = 0; it < config.iterations; ++it) {
    auto [res, cost] = evaluate(it);
    if (config.record_trace) out.trace.push_back(cost.value);
    if (config.convergence_tol > 0.0 && it > 0 &&
        std::abs(cost.value - previous) <= config.convergence_tol * std::abs(previous)) {
      break;
    }
    previous = cost.value;
    const std::vector<double> grad = subdominant_vjp(res, cost.gradient);
    if (config.optimizer == Optimizer::amsgrad) {
      adam.step(current, grad);
    } else {
      for (std::size_t i = 0; i < current.size(); ++i) {
        current[i] -= config.step_size * grad[i];
      }
    }
    ++out.iterations;
    if (!std::all_of(current.begin(), current.end(),
                     [](double v) { return std::isfinite(v); })) {
      throw Error(Errc::non_finite_cost,
                  "weights diverged at iteration " + std::to_string(it));
    }
  }

  // When stopping early the last evaluated point is already the final one.
  const bool stopped_early = out.iterations < config.iterations;
  SubdominantResult final_res = subdominant(graph, current);
  if (config.record_trace && !stopped_early) {
    const CostValue cost = cost_composite(config.cost, final_res, weights);
    if (!std::isfinite(cost.value)) {
      throw Error(Errc::non_finite_cost, "cost is not finite at iteration " +
                                             std::to_string(out.iterations));
    }
    out.trace.push_back(cost.value);
  }

  out.ultrametric = std::move(final_res.ultrametric);
  for (double& v : out.ultrametric) {
    if (v < 0.0) {
      v = 0.0;
      ++out.clamped_edges;
    }
  }
  out.optimized_weights = std::move(current);
  out.dendrogram = single_linkage(graph, out.ultrametric);
  return out;
}

std::vector<double> normalize_trace(std::span<const double> trace) {
  std::vector<double> out(trace.size(), 0.0);
  if (trace.empty()) return out;
  const auto [lo, hi] = std::minmax_element(trace.begin(), trace.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out[i] = (trace[i] - *lo) / range;
  }
  return out;
}

}  // namespace ultrafit
