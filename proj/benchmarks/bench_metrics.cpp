#include <benchmark/benchmark.h>

#include <random>

#include "ecd/medoc.hpp"
#include "ecd/metrics.hpp"
#include "fixtures.hpp"

namespace {

void BM_Nmi(benchmark::State& state) {
  const auto& b = ecd::bench::planted(static_cast<std::size_t>(state.range(0)));
  // A random labelling, so the identical-input shortcut never applies.
  std::mt19937_64 rng(1);
  std::vector<ecd::CommunityId> labels(b.truth.num_vertices());
  for (auto& l : labels) l = static_cast<ecd::CommunityId>(rng() % b.truth.num_communities());
  const ecd::Partition other(labels);
  for (auto _ : state) benchmark::DoNotOptimize(ecd::nmi(b.truth, other));
}
BENCHMARK(BM_Nmi)->Arg(1000)->Arg(4000);

void BM_CoverMetrics(benchmark::State& state) {
  const auto& b = ecd::bench::planted(static_cast<std::size_t>(state.range(0)));
  const auto r = ecd::medoc(b.graph, ecd::default_detectors(), 3, 1);
  const auto truth = ecd::Cover::from_partition(b.truth);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ecd::onmi(truth, r.overlapping));
    benchmark::DoNotOptimize(ecd::omega(truth, r.overlapping));
  }
}
BENCHMARK(BM_CoverMetrics)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FuzzyRand(benchmark::State& state) {
  const auto& b = ecd::bench::planted(static_cast<std::size_t>(state.range(0)));
  const auto r = ecd::medoc(b.graph, ecd::default_detectors(), 3, 1);
  const auto truth = ecd::FuzzyAssignment::from_partition(b.truth);
  for (auto _ : state) benchmark::DoNotOptimize(ecd::fuzzy_rand(truth, r.fuzzy));
}
BENCHMARK(BM_FuzzyRand)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
