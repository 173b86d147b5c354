#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "evinet/qap.hpp"

using namespace evinet;

static void BM_graph_correlation(benchmark::State& state) {
  const auto g1 = bench::er_graph(state.range(0), 5 * state.range(0), 1, true);
  const auto g2 = bench::er_graph(state.range(0), 5 * state.range(0), 2, true);
  const auto pair = restrict_to_common(g1, g2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(graph_correlation(pair));
  }
}
BENCHMARK(BM_graph_correlation)->Arg(1000)->Arg(10000);

static void BM_qap_1000_perms(benchmark::State& state) {
  const auto g1 = bench::er_graph(state.range(0), 5 * state.range(0), 3, true);
  const auto g2 = bench::er_graph(state.range(0), 5 * state.range(0), 4, true);
  const auto pair = restrict_to_common(g1, g2);
  for (auto _ : state) {
    auto result = qap_test(pair, 1000, 5);
    benchmark::DoNotOptimize(result.p_value);
  }
}
BENCHMARK(BM_qap_1000_perms)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
