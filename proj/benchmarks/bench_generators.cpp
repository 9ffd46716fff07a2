#include <benchmark/benchmark.h>

#include "regmatch/graph.hpp"

using namespace regmatch;

static void BM_GenBipartite(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_regular_bipartite(static_cast<NodeId>(state.range(0)),
                                                   static_cast<NodeId>(state.range(1)),
                                                   ++seed));
  }
}
BENCHMARK(BM_GenBipartite)->Args({1000, 16})->Args({10000, 64})->Args({400, 256});

static void BM_GenGeneral(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_regular_general(static_cast<NodeId>(state.range(0)),
                                                 static_cast<NodeId>(state.range(1)),
                                                 ++seed));
  }
}
BENCHMARK(BM_GenGeneral)->Args({1000, 8})->Args({2000, 50});

static void BM_Validate(benchmark::State& state) {
  Graph g = gen_regular_bipartite(10000, 64, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate(g));
  }
}
BENCHMARK(BM_Validate);
