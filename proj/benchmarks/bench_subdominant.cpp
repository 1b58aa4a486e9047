#include <benchmark/benchmark.h>

#include <random>

#include "acceptance/datasets.hpp"
#include "ultrafit/subdominant.hpp"

namespace {

using namespace ultrafit;

struct Instance {
  Graph graph;
  EdgeWeights weights;
};

Instance make_instance(std::size_t edges) {
  Instance in{acceptance::random_sparse_graph(42, edges / 3, edges), {}};
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  in.weights.resize(edges);
  for (double& w : in.weights) w = u(rng);
  return in;
}

void BM_SingleLinkage(benchmark::State& state) {
  const Instance in = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(single_linkage(in.graph, in.weights));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SubdominantForward(benchmark::State& state) {
  const Instance in = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(subdominant(in.graph, in.weights));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SubdominantBackward(benchmark::State& state) {
  const Instance in = make_instance(static_cast<std::size_t>(state.range(0)));
  const SubdominantResult res = subdominant(in.graph, in.weights);
  for (auto _ : state) benchmark::DoNotOptimize(subdominant_vjp(res, in.weights));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SingleLinkage)->RangeMultiplier(10)->Range(1000, 1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubdominantForward)->RangeMultiplier(10)->Range(1000, 1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubdominantBackward)->RangeMultiplier(10)->Range(1000, 1'000'000)->Unit(benchmark::kMillisecond);
