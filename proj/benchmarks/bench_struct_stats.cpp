#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "evinet/struct_stats.hpp"

using namespace evinet;

static void BM_scc(benchmark::State& state) {
  const auto g = bench::er_graph(state.range(0), 5 * state.range(0), 1, true);
  for (auto _ : state) {
    auto result = strongly_connected_components(g);
    benchmark::DoNotOptimize(result.count);
  }
}
BENCHMARK(BM_scc)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_path_stats_exact(benchmark::State& state) {
  const auto g = bench::er_graph(state.range(0), 6 * state.range(0), 2, true);
  for (auto _ : state) {
    auto stats = path_length_stats(g, PathMode::Directed);
    benchmark::DoNotOptimize(stats.apl);
  }
}
BENCHMARK(BM_path_stats_exact)->Arg(500)->Arg(2000);

static void BM_path_stats_sampled(benchmark::State& state) {
  const auto g = bench::er_graph(state.range(0), 6 * state.range(0), 2, true);
  for (auto _ : state) {
    auto stats =
        path_length_stats(g, PathMode::Directed, SourceSample{100, 7});
    benchmark::DoNotOptimize(stats.apl);
  }
}
BENCHMARK(BM_path_stats_sampled)->Arg(10000)->Arg(50000);

static void BM_transitivity(benchmark::State& state) {
  const auto g = bench::er_graph(state.range(0), 8 * state.range(0), 3, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transitivity(g));
  }
}
BENCHMARK(BM_transitivity)->Arg(1000)->Arg(10000);

static void BM_knn_profile(benchmark::State& state) {
  const auto g = bench::er_graph(state.range(0), 8 * state.range(0), 4, true);
  for (auto _ : state) {
    auto profile = knn_profile(g, DegreeMode::Total);
    benchmark::DoNotOptimize(profile.points.size());
  }
}
BENCHMARK(BM_knn_profile)->Arg(1000)->Arg(10000)->Arg(100000);
