#include <benchmark/benchmark.h>

#include "gradlab/classify.hpp"
#include "gradlab/graph_distance.hpp"
#include "gradlab/grid.hpp"
#include "gradlab/zoo.hpp"

using namespace gradlab;

static void BM_ParabolaProjectionClosedForm(benchmark::State& state) {
  const Vec u = vec_of({1.0, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(parabola_projection(u));
  }
}
BENCHMARK(BM_ParabolaProjectionClosedForm);

static void BM_ProjectToGraph(benchmark::State& state) {
  const GraphSpec parabola = make_parabola_graph();
  const Vec u = vec_of({1.0, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_to_graph(parabola, u));
  }
}
BENCHMARK(BM_ProjectToGraph);

static void BM_EvaluateDistanceField(benchmark::State& state) {
  const GraphSpec parabola = make_parabola_graph();
  const Vec u = vec_of({1.3, -0.4});
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_distance_field(parabola, u));
  }
}
BENCHMARK(BM_EvaluateDistanceField);

static void BM_ComputeGrid(benchmark::State& state) {
  const GraphSpec parabola = make_parabola_graph();
  const GridSpec grid{-2.0, -2.0, 2.0, 2.0, static_cast<int>(state.range(0)),
                      static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_grid(parabola, grid));
  }
}
BENCHMARK(BM_ComputeGrid)->Arg(32)->Arg(64);

static void BM_ClassifyAffine(benchmark::State& state) {
  const ScalarField f = make_zoo_field("affine:0.6,0.8:1");
  const Domain box = Domain::box(vec_of({-2.0, -2.0}), vec_of({2.0, 2.0}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_field(f, box));
  }
}
BENCHMARK(BM_ClassifyAffine);

static void BM_BrouwerSmoothedNorm(benchmark::State& state) {
  const ScalarField f = make_zoo_field("smoothed_norm:0.1:0", 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brouwer_fixed_point(f, 1.0));
  }
}
BENCHMARK(BM_BrouwerSmoothedNorm);

BENCHMARK_MAIN();
