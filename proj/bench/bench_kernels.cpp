// Serial reference vs OpenMP task evaluation of one configuration's functionals,
// and a small sweep parallelized across grid points.
#include "gmesim/branch_config.hpp"
#include "gmesim/kernels.hpp"
#include "gmesim/regime_scanner.hpp"

#include <benchmark/benchmark.h>

using namespace gmesim;

namespace {

BranchConfig split_layout() {
  LayoutSpec s;
  s.family = GeometryFamily::Split;
  s.separation = 1.0;
  s.offset = 1.0;
  s.T = 40.0;
  return make_layout(s);
}

void BM_Functionals(benchmark::State& state) {
  const BranchConfig c = split_layout();
  const auto policy = state.range(0) ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  KernelOptions o;
  o.epsilon_levels = 4;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_functionals(c, o, policy));
}
BENCHMARK(BM_Functionals)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_StaticSweep(benchmark::State& state) {
  SweepSpec s;
  s.base.layout.separation = 1.0;
  s.base.layout.offset = 1.0;
  s.base.G = 1e-3;
  s.numerics.epsilon_levels = 4;
  s.policy = state.range(0) ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  s.axes = {{SweepAxis::Duration, {10, 20, 40, 80}}, {SweepAxis::Offset, {0.5, 1, 2, 4}}};
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(s));
}
BENCHMARK(BM_StaticSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
