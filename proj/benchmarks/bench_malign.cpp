#include <benchmark/benchmark.h>

#include "malign/estimators.hpp"
#include "malign/gibbs_er.hpp"
#include "malign/gibbs_gaussian.hpp"
#include "malign/models.hpp"
#include "malign/rng.hpp"
#include "malign/spanning_tree.hpp"

using namespace malign;

static void BM_GaussianHamiltonian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GaussianSample s = sample_gaussian({n, 3, 0.5}, 1);
  Rng rng = seeded_rng(2);
  const Alignment sigma = random_alignment(n, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian(s.observed, sigma));
}
BENCHMARK(BM_GaussianHamiltonian)->Arg(20)->Arg(50)->Arg(100);

static void BM_ErLogPosterior(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ErSample s = sample_er({n, 3, 3.0, 0.6}, 1);
  Rng rng = seeded_rng(2);
  const Alignment pi = random_alignment(n, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(er_log_posterior(s.observed, pi, s.params));
}
BENCHMARK(BM_ErLogPosterior)->Arg(20)->Arg(50)->Arg(100);

static void BM_AnnealMoves(benchmark::State& state) {
  const GaussianSample s = sample_gaussian({50, 3, 0.6}, 3);
  AnnealSchedule schedule;
  schedule.moves = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(anneal(s.observed, 0.6, schedule, 4).energy);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_AnnealMoves)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_PosteriorTable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GaussianSample s = sample_gaussian({n, 2, 0.5}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_posterior_table(s.observed, 0.5, s.truth).log_partition());
}
BENCHMARK(BM_PosteriorTable)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_Prim(benchmark::State& state) {
  Rng rng = seeded_rng(6);
  const auto g = WeightedCompleteGraph::uniform(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(max_spanning_tree(g).weight);
}
BENCHMARK(BM_Prim)->Arg(6)->Arg(32)->Arg(128);
BENCHMARK_MAIN();
