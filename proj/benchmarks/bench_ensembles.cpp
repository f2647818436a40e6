#include <benchmark/benchmark.h>

#include "ecd/endisco.hpp"
#include "ecd/medoc.hpp"
#include "ecd/selection.hpp"
#include "fixtures.hpp"

namespace {

using ecd::bench::base_partitions;
using ecd::bench::planted;

// Only the ensemble stage is timed; the base partitions are built once per size.

void BM_EndiscoStage(benchmark::State& state) {
  const auto& g = planted(static_cast<std::size_t>(state.range(0))).graph;
  const auto bases = base_partitions(g, 5);
  ecd::EndiscoOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ecd::endisco_from_solutions(g, bases, 1, opts));
}
BENCHMARK(BM_EndiscoStage)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_MedocStage(benchmark::State& state) {
  const auto& g = planted(static_cast<std::size_t>(state.range(0))).graph;
  const auto bases = base_partitions(g, 5);
  ecd::MedocOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ecd::medoc_from_solutions(g, bases, 1, opts));
}
BENCHMARK(BM_MedocStage)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ConsensusStage(benchmark::State& state) {
  const auto& g = planted(static_cast<std::size_t>(state.range(0))).graph;
  const auto bases = base_partitions(g, 5);
  const auto detectors = ecd::default_detectors();
  ecd::ConsensusOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ecd::consensus_from_solutions(bases, detectors, 5, 1, opts));
}
BENCHMARK(BM_ConsensusStage)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ScoreSolutions(benchmark::State& state) {
  const auto& g = planted(500).graph;
  const auto bases = base_partitions(g, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ecd::score_solutions(bases, 1));
  state.counters["solutions"] = static_cast<double>(bases.size());
}
BENCHMARK(BM_ScoreSolutions)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Vrrw(benchmark::State& state) {
  const auto& g = planted(500).graph;
  const auto sb = ecd::score_solutions(base_partitions(g, 10), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ecd::select_vrrw(sb, 24));
}
BENCHMARK(BM_Vrrw);

}  // namespace
