#include <benchmark/benchmark.h>

#include "reputax/dynamic_solver.hpp"
#include "reputax/static_solver.hpp"

using namespace reputax;

static void BM_SolveStatic(benchmark::State& state) {
  const Economy e;
  const FeasibleSet set = build_feasible_set(e, GridSpec{});
  double theta = 0.8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_static(theta, e, set));
    theta = theta > 0.95 ? 0.6 : theta + 0.01;
  }
}
BENCHMARK(BM_SolveStatic);

static void BM_BellmanApply(benchmark::State& state) {
  SolverConfig c;
  c.theta_grid_size = static_cast<int>(state.range(0));
  const BellmanOperator op(c);
  const ValueFunction V = random_value_function(op.grid(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(V));
  state.SetItemsProcessed(state.iterations() * c.theta_grid_size);
}
BENCHMARK(BM_BellmanApply)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

static void BM_GeneralAllocation(benchmark::State& state) {
  const EconomyPrimitives p;
  double S = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_allocation_general(p, S));
    S = S > 0.95 ? 0.5 : S + 0.001;
  }
}
BENCHMARK(BM_GeneralAllocation);
BENCHMARK_MAIN();
