#include <benchmark/benchmark.h>

#include "mevolve/augment.hpp"
#include "mevolve/generate.hpp"
#include "mevolve/sampling.hpp"
#include "mevolve/spectral.hpp"

namespace {

using mevolve::AugmentConfig;
using mevolve::Graph;
using mevolve::Mapping;
using mevolve::Rng;

Graph bench_graph(std::size_t n, double p) {
  Rng rng(0xBE7C);
  return mevolve::erdos_renyi(n, p, rng);
}

void BM_RaScoreAllPairs(benchmark::State& state) {
  const Graph g = bench_graph(static_cast<std::size_t>(state.range(0)), 0.15);
  for (auto _ : state) {
    double sum = 0.0;
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
      for (std::uint32_t j = i + 1; j < g.vertex_count(); ++j) {
        sum += g.ra_score(i, j);
      }
    }
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_RaScoreAllPairs)->Arg(30)->Arg(60)->Arg(120);

void BM_MotifCandidates(benchmark::State& state) {
  const Graph g = bench_graph(static_cast<std::size_t>(state.range(0)), 0.15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mevolve::build_motif_add_candidates(g, 2));
  }
}
BENCHMARK(BM_MotifCandidates)->Arg(30)->Arg(60)->Arg(120);

void BM_PathSearch(benchmark::State& state) {
  const Graph g = bench_graph(60, 0.15);
  for (auto _ : state) {
    for (std::uint32_t j = 1; j < 20; ++j) {
      benchmark::DoNotOptimize(g.find_paths(0, j, static_cast<std::size_t>(state.range(0))));
    }
  }
}
BENCHMARK(BM_PathSearch)->Arg(2)->Arg(3);

void BM_Mapping(benchmark::State& state) {
  const Graph g = bench_graph(60, 0.15);
  AugmentConfig cfg;
  cfg.mapping = static_cast<Mapping>(state.range(0));
  cfg.beta = 0.15;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(seed++);
    benchmark::DoNotOptimize(mevolve::augment_graph(g, cfg, rng));
  }
}
BENCHMARK(BM_Mapping)
    ->Arg(static_cast<int>(Mapping::Random))
    ->Arg(static_cast<int>(Mapping::VertexSimilarity))
    ->Arg(static_cast<int>(Mapping::MotifRandom))
    ->Arg(static_cast<int>(Mapping::MotifSimilarity));

void BM_SpectralEmbed(benchmark::State& state) {
  const Graph g = bench_graph(static_cast<std::size_t>(state.range(0)), 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mevolve::spectral_embed(g, 128));
  }
}
BENCHMARK(BM_SpectralEmbed)->Arg(20)->Arg(60)->Arg(150);

void BM_WeightedSample(benchmark::State& state) {
  std::vector<std::pair<int, double>> table;
  Rng setup(7);
  for (int i = 0; i < state.range(0); ++i) table.emplace_back(i, setup.uniform01() * 3.0);
  Rng rng(11);
  const std::size_t k = static_cast<std::size_t>(state.range(0)) / 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mevolve::weighted_sample_without_replacement(table, k, rng));
  }
}
BENCHMARK(BM_WeightedSample)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
