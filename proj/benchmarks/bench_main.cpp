#include <benchmark/benchmark.h>

#include <random>

#include "laxbases/bases_complex.hpp"
#include "laxbases/connectivity.hpp"
#include "laxbases/exact_rank.hpp"
#include "laxbases/simplicial.hpp"
#include "laxbases/sp_group.hpp"

namespace {

using namespace laxbases;

bases::BasesSpec spec(int g, std::int64_t L, int max_dim) {
  bases::BasesSpec s;
  s.g = g;
  s.L = L;
  s.max_dim = max_dim;
  return s;
}

void BM_BuildBases(benchmark::State& state) {
  const auto s = spec(static_cast<int>(state.range(0)), state.range(1), static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(bases::build_bases(s));
}
BENCHMARK(BM_BuildBases)->Args({2, 3, 1})->Args({3, 2, 2})->Args({3, 3, 2})->Unit(benchmark::kMillisecond);

void BM_ReducedBetti(benchmark::State& state) {
  const auto g = static_cast<int>(state.range(0));
  const auto x = bases::build_bases(spec(g, state.range(1), g - 1));
  for (auto _ : state) benchmark::DoNotOptimize(topology::reduced_betti(x.complex, g - 2));
}
BENCHMARK(BM_ReducedBetti)->Args({2, 3})->Args({3, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_ExactRankRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3), keep(0, 9);
  linalg::SparseIntMatrix m;
  m.rows = n;
  m.cols = n;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::pair<std::uint32_t, std::int64_t>> col;
    for (std::size_t r = 0; r < n; ++r) {
      if (keep(rng) == 0) {
        if (const auto v = entry(rng); v != 0) col.emplace_back(static_cast<std::uint32_t>(r), v);
      }
    }
    m.columns.push_back(std::move(col));
  }
  for (auto _ : state) benchmark::DoNotOptimize(linalg::exact_rank(m));
}
BENCHMARK(BM_ExactRankRandom)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_EnumerateGroup(benchmark::State& state) {
  const auto g = static_cast<int>(state.range(0));
  const linalg::Modulus m(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sp::enumerate_group(g, m));
}
BENCHMARK(BM_EnumerateGroup)->Args({1, 6})->Args({2, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_ConnectAllPairs(benchmark::State& state) {
  const bases::BasesGraph graph(bases::build_bases(spec(static_cast<int>(state.range(0)), state.range(1), 1)));
  for (auto _ : state) {
    for (topology::Vertex v = 0; v < graph.vertex_count(); ++v) {
      benchmark::DoNotOptimize(bases::connect_vertices(graph, graph.vertex(0), graph.vertex(v)));
    }
  }
}
BENCHMARK(BM_ConnectAllPairs)->Args({2, 3})->Args({3, 2})->Args({2, 5})->Unit(benchmark::kMillisecond);

void BM_FillLoops(benchmark::State& state) {
  const bases::BasesGraph graph(bases::build_bases(spec(3, 2, 2)));
  std::mt19937_64 rng(11);
  for (auto _ : state) {
    const auto loop = bases::random_cycle(graph, 8, rng);
    benchmark::DoNotOptimize(bases::fill_loop(graph, bases::SphereMap::from_cycle(loop)));
  }
}
BENCHMARK(BM_FillLoops)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
