#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ecd/benchgen.hpp"
#include "ecd/ensemble.hpp"
#include "ecd/error.hpp"
#include "ecd/metrics.hpp"
#include "planted.hpp"

namespace ecd {
namespace {

Graph two_cliques(std::size_t k) {
  GraphBuilder b(2 * k);
  for (VertexId base : {VertexId{0}, static_cast<VertexId>(k)})
    for (VertexId i = 0; i < k; ++i)
      for (VertexId j = i + 1; j < k; ++j) b.add_edge(base + i, base + j);
  return b.build();
}

TEST(OrderingCount, DefaultIsFifthOfVerticesCapped) {
  EXPECT_EQ(default_ordering_count(1), 1u);
  EXPECT_EQ(default_ordering_count(11), 3u);
  EXPECT_EQ(default_ordering_count(100), 20u);
  EXPECT_EQ(default_ordering_count(10000), kDefaultOrderingCap);
  EXPECT_EQ(default_ordering_count(10000, 2000), 2000u);
}

TEST(BaseSolutions, SingleRunEqualsDirectCall) {
  const auto bench = gen_disjoint(testing::desk_config(200, 0.3, 1));
  std::vector<BaseDetector> d{detector_by_name("louvain")};
  auto set = generate_base_solutions(bench.graph, d, 1, 9, 1);
  ASSERT_EQ(set.size(), 1u);
  const auto& s = set.solutions[0];
  EXPECT_EQ(s.partition, d[0].detect(bench.graph, ensemble_ordering(200, 9, 0), s.seed));
}

TEST(BaseSolutions, CardinalityAndDeterminismAcrossThreads) {
  const auto bench = gen_disjoint(testing::desk_config(200, 0.3, 2));
  std::vector<BaseDetector> d{detector_by_name("louvain"), detector_by_name("lpa")};
  auto a = generate_base_solutions(bench.graph, d, 3, 4, 1);
  auto b = generate_base_solutions(bench.graph, d, 3, 4, 3);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(a.solutions[i].partition, b.solutions[i].partition);
}

TEST(BaseSolutions, FailedRunsAreRecorded) {
  const auto g = two_cliques(4);
  BaseDetector broken{"broken", [](const Graph&, const VertexOrdering&, std::uint64_t) -> Partition {
                        throw Error("boom");
                      }};
  std::vector<BaseDetector> d{detector_by_name("louvain"), broken};
  auto set = generate_base_solutions(g, d, 2, 1, 1);
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.failures, 2u);
  std::vector<BaseDetector> only_broken{broken};
  EXPECT_THROW(generate_base_solutions(g, only_broken, 2, 1, 1), Error);
}

TEST(CoOccurrence, FractionOfAgreeingPartitions) {
  std::vector<Partition> ps{Partition({0, 0, 1}), Partition({0, 1, 1})};
  auto d = co_occurrence(ps);
  EXPECT_DOUBLE_EQ(d[0 * 3 + 1], 0.5);
  EXPECT_DOUBLE_EQ(d[1 * 3 + 2], 0.5);
  EXPECT_DOUBLE_EQ(d[0 * 3 + 2], 0.0);
  EXPECT_DOUBLE_EQ(d[1 * 3 + 1], 1.0);
}

TEST(Consensus, UnanimousInputConvergesImmediately) {
  const auto bench = gen_disjoint(testing::desk_config(150, 0.3, 3));
  std::vector<Partition> same(5, bench.truth);
  std::vector<BaseDetector> d{detector_by_name("louvain")};
  auto r = consensus_from_solutions(same, d, 3, 1);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.rounds, 1u);
  EXPECT_EQ(r.partition, bench.truth);
}

TEST(Consensus, DisconnectedCliques) {
  const auto g = two_cliques(6);
  auto r = consensus_clustering(g, default_detectors(), 3, 2);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.partition, Partition({0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1}));
}

TEST(Consensus, NotWorseThanMeanBase) {
  double consensus_total = 0.0, base_total = 0.0;
  const std::size_t seeds = 3;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    const auto bench = gen_disjoint(testing::desk_config(300, 0.3, seed));
    auto set = generate_base_solutions(bench.graph, default_detectors(), 5, seed, 1);
    std::vector<Partition> ps;
    double mean = 0.0;
    for (const auto& s : set.solutions) {
      ps.push_back(s.partition);
      mean += nmi(s.partition, bench.truth);
    }
    base_total += mean / static_cast<double>(ps.size());
    auto r = consensus_from_solutions(ps, default_detectors(), 5, seed);
    consensus_total += nmi(r.partition, bench.truth);
  }
  EXPECT_GE(consensus_total / seeds, base_total / seeds);
}

TEST(SolutionSet, SaveLoadRoundTrip) {
  const auto bench = gen_disjoint(testing::desk_config(100, 0.2, 5));
  std::vector<BaseDetector> d{detector_by_name("louvain"), detector_by_name("cnm")};
  auto set = generate_base_solutions(bench.graph, d, 2, 7, 1);
  const auto dir = std::filesystem::temp_directory_path() / "ecd_solution_set_test";
  std::filesystem::remove_all(dir);
  const auto table = SymbolTable::from_graph(bench.graph);
  save_solution_set(dir, set, table);
  auto back = load_solution_set(dir / "manifest.json", table);
  ASSERT_EQ(back.size(), set.size());
  EXPECT_EQ(back.algorithms, set.algorithms);
  EXPECT_EQ(back.seed, set.seed);
  for (std::size_t i = 0; i < set.size(); ++i) {
    EXPECT_EQ(back.solutions[i].partition, set.solutions[i].partition);
    EXPECT_EQ(back.solutions[i].algorithm, set.solutions[i].algorithm);
    EXPECT_EQ(back.solutions[i].ordering_index, set.solutions[i].ordering_index);
  }
  std::filesystem::remove_all(dir);
}

TEST(SolutionSet, MalformedManifest) {
  const auto path = std::filesystem::temp_directory_path() / "ecd_bad_manifest.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  EXPECT_THROW(load_solution_set(path, SymbolTable{}), ParseError);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace ecd
