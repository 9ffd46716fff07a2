#include <benchmark/benchmark.h>

#include <map>

#include "regmatch/luby.hpp"
#include "regmatch/rng.hpp"

using namespace regmatch;

namespace {

const Graph& cached_graph(int n_side, int delta) {
  static std::map<std::pair<int, int>, Graph> cache;
  auto key = std::make_pair(n_side, delta);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, gen_regular_bipartite(n_side, delta, 12345)).first;
  }
  return it->second;
}

}  // namespace

static void BM_LubyOneRound(benchmark::State& state) {
  const Graph& g = cached_graph(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(1)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(luby_round_distributed(g, 2, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_LubyOneRound)->Args({2000, 16})->Args({2000, 64})->Args({10000, 64});

static void BM_LubySequential(benchmark::State& state) {
  const Graph& g = cached_graph(static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(1)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(luby_round_sequential(g, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * g.edge_count());
}
BENCHMARK(BM_LubySequential)->Args({2000, 16})->Args({10000, 64});

static void BM_MultiRound(benchmark::State& state) {
  const Graph& g = cached_graph(4096, 64);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        multi_round_luby(g, static_cast<std::int32_t>(state.range(0)), ++seed));
  }
}
BENCHMARK(BM_MultiRound)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
