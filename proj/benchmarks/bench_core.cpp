#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "diffloc/cluster_analysis.hpp"
#include "diffloc/eigensolver.hpp"
#include "diffloc/gravity.hpp"
#include "diffloc/kernel.hpp"
#include "diffloc/random_walk.hpp"

using namespace diffloc;

namespace {

GravityInstance instance(std::int64_t n) {
  GravityConfig cfg;
  cfg.n = static_cast<std::size_t>(n);
  cfg.seed = 7;
  cfg.planted = {{15, 20.0}};
  return generate(cfg);
}

void BM_Matvec(benchmark::State& state) {
  const RandomWalkOperator op = normalize(instance(state.range(0)).graph);
  std::vector<double> x(op.size(), 1.0), y(op.size());
  for (auto _ : state) {
    op.apply_symmetric(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_Matvec)->Arg(200)->Arg(1000)->Arg(3000);

void BM_TopEigenpairs(benchmark::State& state) {
  const RandomWalkOperator op = normalize(instance(state.range(0)).graph);
  for (auto _ : state) benchmark::DoNotOptimize(top_eigenpairs(op, 10));
}
BENCHMARK(BM_TopEigenpairs)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BuildKernel(benchmark::State& state) {
  const GravityInstance g = instance(state.range(0));
  KernelSpec spec;
  spec.kind = KernelKind::migration_sq_over_prod;
  for (auto _ : state) benchmark::DoNotOptimize(build_kernel(g.graph, g.nodes, spec));
}
BENCHMARK(BM_BuildKernel)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Collapse(benchmark::State& state) {
  const GravityInstance g = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(collapse(g.graph, g.labels));
}
BENCHMARK(BM_Collapse)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
