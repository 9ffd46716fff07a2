#include <benchmark/benchmark.h>

#include "regmatch/oracle.hpp"
#include "regmatch/warmup.hpp"

using namespace regmatch;

static void BM_BipartiteOracle(benchmark::State& state) {
  Graph g = gen_regular_bipartite(static_cast<NodeId>(state.range(0)),
                                  static_cast<NodeId>(state.range(1)), 31);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_matching_bipartite(g));
  }
}
BENCHMARK(BM_BipartiteOracle)->Args({250, 4})->Args({2000, 16})->Args({10000, 16});

static void BM_AugmentingPaths(benchmark::State& state) {
  Graph g = gen_regular_bipartite(250, 4, 17);
  Matching m = Matching::empty(g.node_count());
  for (const Edge& e : g.edges()) {
    if (!m.covers(e.u) && !m.covers(e.v) && (e.u + e.v) % 3 == 0) m.add(e.u, e.v, 0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        enumerate_augmenting_paths(g, m, static_cast<std::int32_t>(state.range(0))));
  }
}
BENCHMARK(BM_AugmentingPaths)->Arg(5)->Arg(9)->Arg(15);
