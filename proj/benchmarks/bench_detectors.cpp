#include <benchmark/benchmark.h>

#include "ecd/detectors.hpp"
#include "ecd/ensemble.hpp"
#include "fixtures.hpp"

namespace {

void BM_Detector(benchmark::State& state, const char* name) {
  const auto& g = ecd::bench::planted(static_cast<std::size_t>(state.range(0))).graph;
  const auto det = ecd::detector_by_name(name);
  const auto ordering = ecd::ensemble_ordering(g.num_vertices(), 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(det.detect(g, ordering, 1));
}

BENCHMARK_CAPTURE(BM_Detector, louvain, "louvain")->RangeMultiplier(2)->Range(250, 2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Detector, lpa, "lpa")->RangeMultiplier(2)->Range(250, 2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Detector, cnm, "cnm")->RangeMultiplier(2)->Range(250, 2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Detector, walktrap, "walktrap")->RangeMultiplier(2)->Range(250, 1000)->Unit(benchmark::kMillisecond);

void BM_GenerateDisjoint(benchmark::State& state) {
  ecd::BenchConfig c;
  c.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ecd::gen_disjoint(c));
    ++c.seed;
  }
}
BENCHMARK(BM_GenerateDisjoint)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace
