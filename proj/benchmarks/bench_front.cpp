// Wall-clock companions to the counter-based comparison in run_benchmark.
// Counters are attached so the two views can be read side by side.

#include <benchmark/benchmark.h>

#include "pareto/grid.hpp"
#include "pareto/pathfollow.hpp"

namespace {

using namespace pareto;

const ObjectiveBundle& bundle(int which) {
  static const ObjectiveBundle toy = make_problem(registered_problem("paper-toy"));
  static const ObjectiveBundle logistic = make_problem(registered_problem("quadratic-logistic"));
  return which == 0 ? toy : logistic;
}

void report(benchmark::State& state, const ObjectiveBundle& b, const ParetoFront& front) {
  state.counters["points"] = static_cast<double>(front.points.size());
  state.counters["grad_equiv"] = front.total_counters.gradient_equivalents(b.n());
  state.counters["newton_iters"] = static_cast<double>(front.total_counters.newton_iters);
  state.counters["gd_iters"] = static_cast<double>(front.total_counters.gd_iters);
}

// Arguments: problem (0 toy, 1 logistic), 1/d.
template <typename Run>
void run_front(benchmark::State& state, Run run) {
  const auto& b = bundle(static_cast<int>(state.range(0)));
  const auto grid = build_grid(b.m(), 1.0 / static_cast<double>(state.range(1)));
  FrontConfig cfg;
  ParetoFront front;
  for (auto _ : state) {
    front = run(b, grid, cfg);
    benchmark::DoNotOptimize(front.points.data());
  }
  report(state, b, front);
}

void BM_PathFollow(benchmark::State& state) { run_front(state, trace_front); }
void BM_Naive(benchmark::State& state) { run_front(state, naive_front); }
void BM_Parallel2(benchmark::State& state) {
  run_front(state, [](const ObjectiveBundle& b, const WeightGrid& g, const FrontConfig& c) {
    return trace_front_parallel(b, g, 2, c);
  });
}

void spacings(benchmark::internal::Benchmark* bm) {
  for (int problem : {0, 1}) {
    for (int inv_d : {10, 100, 1000}) bm->Args({problem, inv_d});
  }
  bm->ArgNames({"problem", "inv_d"})->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_PathFollow)->Apply(spacings);
BENCHMARK(BM_Naive)->Apply(spacings);
BENCHMARK(BM_Parallel2)->Apply(spacings);

BENCHMARK_MAIN();
