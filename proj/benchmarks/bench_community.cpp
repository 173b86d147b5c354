#include <benchmark/benchmark.h>

#include <numeric>

#include "bench_util.hpp"
#include "evinet/community.hpp"

using namespace evinet;

namespace {

CommunityAllocation halves(const EvidenceNetwork& g) {
  CommunityAllocation alloc{"halves", {{}, {}}, ""};
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    alloc.communities[u % 2].push_back(g.nodes().label(u));
  return alloc;
}

}  // namespace

static void BM_modularity(benchmark::State& state) {
  const auto g = bench::er_graph(state.range(0), 6 * state.range(0), 1, false);
  const auto alloc = restrict_allocation(halves(g), g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(modularity(g, alloc));
  }
}
BENCHMARK(BM_modularity)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_segregation(benchmark::State& state) {
  const auto g = bench::er_graph(state.range(0), 6 * state.range(0), 2, false);
  const auto alloc = restrict_allocation(halves(g), g);
  for (auto _ : state) {
    auto r = segregation_index(g, alloc);
    benchmark::DoNotOptimize(r.score);
  }
}
BENCHMARK(BM_segregation)->Arg(1000)->Arg(10000);

static void BM_min_cut_brute(benchmark::State& state) {
  const auto g =
      bench::er_graph(state.range(0), 3 * state.range(0), 3, false);
  std::vector<NodeId> all(g.num_nodes());
  std::iota(all.begin(), all.end(), 0);
  for (auto _ : state) {
    auto cut = min_conductance_cut(g, all, CutMethod::Brute);
    benchmark::DoNotOptimize(cut.phi);
  }
}
BENCHMARK(BM_min_cut_brute)->Arg(12)->Arg(16)->Arg(20);

static void BM_min_cut_sweep(benchmark::State& state) {
  const auto g =
      bench::er_graph(state.range(0), 5 * state.range(0), 4, false);
  std::vector<NodeId> all(g.num_nodes());
  std::iota(all.begin(), all.end(), 0);
  for (auto _ : state) {
    auto cut = min_conductance_cut(g, all, CutMethod::Sweep);
    benchmark::DoNotOptimize(cut.phi);
  }
}
BENCHMARK(BM_min_cut_sweep)->Arg(50)->Arg(200)->Arg(500)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
