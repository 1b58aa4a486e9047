#include <benchmark/benchmark.h>

#include <random>

#include "acceptance/datasets.hpp"
#include "ultrafit/fitting.hpp"

namespace {

using namespace ultrafit;

// One full iteration: forward pass, cost, backward pass, optimizer step.
void run_iterations(benchmark::State& state, const CostSpec& spec) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const Graph g = acceptance::random_sparse_graph(7, m / 3, m);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  EdgeWeights w(m);
  for (double& x : w) x = u(rng);
  EdgeWeights current = w;
  AmsGrad opt(m, 0.1);
  for (auto _ : state) {
    const SubdominantResult res = subdominant(g, current);
    const CostValue c = cost_composite(spec, res, w);
    opt.step(current, subdominant_vjp(res, c.gradient));
    benchmark::DoNotOptimize(current.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IterationClosest(benchmark::State& state) {
  run_iterations(state, {{{ClosestTerm{}, 1.0}}});
}

void BM_IterationClosestSize(benchmark::State& state) {
  run_iterations(state, {{{ClosestTerm{}, 1.0}, {ClusterSizeTerm{10}, 10.0}}});
}

void BM_IterationDasgupta(benchmark::State& state) {
  run_iterations(state, {{{DasguptaTerm{1.0}, 1.0}}});
}

}  // namespace

BENCHMARK(BM_IterationClosest)->RangeMultiplier(10)->Range(1000, 1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IterationClosestSize)->RangeMultiplier(10)->Range(1000, 1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IterationDasgupta)->RangeMultiplier(10)->Range(1000, 100'000)->Unit(benchmark::kMillisecond);
