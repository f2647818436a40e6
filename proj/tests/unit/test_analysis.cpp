#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ecd/analysis.hpp"
#include "ecd/benchgen.hpp"
#include "ecd/error.hpp"
#include "oracles.hpp"
#include "planted.hpp"

namespace ecd {
namespace {

Graph clique(std::size_t k) {
  GraphBuilder b(k);
  for (VertexId i = 0; i < k; ++i)
    for (VertexId j = i + 1; j < k; ++j) b.add_edge(i, j);
  return b.build();
}

TEST(KShell, HandCases) {
  auto cycle = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  EXPECT_EQ(k_shell_decomposition(cycle), std::vector<std::uint32_t>(5, 2));
  auto star = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_EQ(k_shell_decomposition(star), std::vector<std::uint32_t>(5, 1));
  EXPECT_EQ(k_shell_decomposition(clique(5)), std::vector<std::uint32_t>(5, 4));
  auto isolated = make_graph(3, {{0, 1}});
  EXPECT_EQ(k_shell_decomposition(isolated)[2], 0u);
}

TEST(KShell, MatchesRepeatedPeeling) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(40, 0.05 + 0.02 * static_cast<double>(seed), seed);
    EXPECT_EQ(k_shell_decomposition(g), oracle::k_shells(g)) << seed;
  }
}

TEST(Tiers, ShellAndAssociationBuckets) {
  EXPECT_EQ(shell_tier(1, 9), 0u);
  EXPECT_EQ(shell_tier(3, 9), 0u);
  EXPECT_EQ(shell_tier(4, 9), 1u);
  EXPECT_EQ(shell_tier(9, 9), 2u);
  EXPECT_EQ(shell_tier(1, 1), 2u);
  EXPECT_EQ(association_bucket(0.0), 0u);
  EXPECT_EQ(association_bucket(0.25), 1u);
  EXPECT_EQ(association_bucket(0.74), 2u);
  EXPECT_EQ(association_bucket(1.0), 3u);
}

TEST(CorePeriphery, FullAssociationFillsTopBucket) {
  const auto g = clique(6);
  std::vector<VertexSet> comms{{0, 1, 2, 3, 4, 5}};
  std::vector<std::vector<double>> assoc{std::vector<double>(6, 1.0)};
  auto prof = core_periphery_profile(g, comms, assoc);
  ASSERT_EQ(prof.size(), 1u);
  EXPECT_EQ(prof[0].table[2][3], 6u);
}

TEST(CorePeriphery, BucketTotalsEqualCommunitySize) {
  const auto bench = gen_disjoint(testing::desk_config(200, 0.3, 1));
  auto r = medoc(bench.graph, default_detectors(), 3, 2);
  auto prof = core_periphery_profile(bench.graph, r);
  ASSERT_FALSE(prof.empty());
  for (const auto& p : prof) {
    std::size_t total = 0;
    for (const auto& row : p.table)
      for (auto c : row) total += c;
    EXPECT_EQ(total, p.members.size());
  }
}

double mean_shell_association_rho(Association association) {
  double total = 0.0;
  std::size_t counted = 0;
  MedocOptions options;
  options.association = association;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto bench = gen_disjoint(testing::desk_config(300, 0.3, seed));
    auto r = medoc(bench.graph, default_detectors(), 3, seed, options);
    for (const auto& p : core_periphery_profile(bench.graph, r)) {
      std::vector<double> shell(p.shell.begin(), p.shell.end());
      if (auto rho = spearman(shell, p.association)) {
        total += *rho;
        ++counted;
      }
    }
  }
  return counted == 0 ? 0.0 : total / static_cast<double>(counted);
}

TEST(CorePeriphery, ShellCorrelatesWithDefaultAssociation) {
  EXPECT_GE(mean_shell_association_rho(Association::kWeighted), 0.0);
}

TEST(CorePeriphery, ShellCorrelatesWithSimpleAssociation) {
  EXPECT_GE(mean_shell_association_rho(Association::kSimple), 0.0);
}

TEST(Spearman, HandValuesAndDegenerate) {
  std::vector<double> x{1, 2, 3, 4}, y{10, 20, 30, 40}, z{4, 3, 2, 1}, flat{1, 1, 1, 1};
  EXPECT_NEAR(*spearman(x, y), 1.0, 1e-12);
  EXPECT_NEAR(*spearman(x, z), -1.0, 1e-12);
  EXPECT_FALSE(spearman(x, flat).has_value());
  std::vector<double> ties{1, 2, 2, 3};
  // Average ranks (1, 2.5, 2.5, 4) against (1, 2, 3, 4).
  EXPECT_NEAR(*spearman(x, ties), 4.5 / std::sqrt(5.0 * 4.5), 1e-12);
}

TEST(Stable, IdenticalSnapshotsAgreeFully) {
  const auto bench = gen_disjoint(testing::desk_config(200, 0.1, 3));
  std::vector<Graph> snaps{bench.graph, bench.graph};
  auto report = stable_communities(snaps, default_detectors(), 3, 1);
  ASSERT_EQ(report.consecutive.size(), 1u);
  ASSERT_TRUE(report.consecutive[0].nmi.has_value());
  EXPECT_DOUBLE_EQ(*report.consecutive[0].nmi, 1.0);
}

TEST(Stable, EmptyIntersectionIsUndefined) {
  StableSnapshot a{{0, 1}, {0, 0}}, b{{2, 3}, {0, 1}};
  auto c = compare_stable(a, b);
  EXPECT_EQ(c.shared_vertices, 0u);
  EXPECT_FALSE(c.nmi.has_value());
  EXPECT_FALSE(c.ari.has_value());
}

TEST(Stable, PersistentPlantedCore) {
  const auto bench = gen_disjoint(testing::desk_config(300, 0.1, 4));
  std::mt19937_64 rng(5);
  std::bernoulli_distribution keep(0.9);
  std::vector<Graph> snaps;
  for (int t = 0; t < 3; ++t) {
    GraphBuilder b(300);
    for (const auto& e : bench.graph.edges())
      if (keep(rng)) b.add_edge(e.u, e.v);
    snaps.push_back(b.build());
  }
  auto report = stable_communities(snaps, default_detectors(), 3, 6);
  for (const auto& c : report.consecutive) {
    ASSERT_TRUE(c.nmi.has_value());
    EXPECT_GE(*c.nmi, 0.8);
  }
}

TEST(Degeneracy, OrderIndependentSubjectHasZeroSpread) {
  DegeneracySubject fixed{"fixed", [](const Graph& g, std::size_t, std::uint64_t) {
                            return Partition(connected_components(g));
                          }};
  const auto g = oracle::random_graph(30, 0.1, 1);
  std::vector<DegeneracySubject> subjects{fixed, degeneracy_subject(detector_by_name("lpa"))};
  auto rows = degeneracy_report(g, subjects, 6, 2, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].name, "fixed");
  EXPECT_DOUBLE_EQ(rows[0].min, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].iqr(), 0.0);
  EXPECT_EQ(rows[0].samples, 15u);
}

TEST(Degeneracy, QuantilesInterpolate) {
  EXPECT_DOUBLE_EQ(quantile({4, 1, 3, 2}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({4, 1, 3, 2}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile({4, 1, 3, 2}, 1.0), 4.0);
  auto s = summarize("x", {1, 2, 3, 4, 5});
  EXPECT_DOUBLE_EQ(s.q1, 2.0);
  EXPECT_DOUBLE_EQ(s.q3, 4.0);
}

TEST(Runtime, RatioIsAtLeastOne) {
  const auto bench = gen_disjoint(testing::desk_config(150, 0.3, 2));
  for (auto m : {EnsembleMethod::kEndisco, EnsembleMethod::kMedoc, EnsembleMethod::kConsensus}) {
    auto r = runtime_ratio(bench.graph, m, default_detectors(), 2, 1);
    EXPECT_GE(r.theta, 1.0) << ensemble_method_name(m);
    EXPECT_GE(r.total_seconds, r.base_seconds);
  }
}

TEST(Csv, LongFormat) {
  std::vector<CsvRow> rows{{"endisco", "median", 0.5}};
  std::ostringstream out;
  write_csv(out, rows);
  EXPECT_EQ(out.str(), "method,statistic,value\nendisco,median,0.5\n");
}

}  // namespace
}  // namespace ecd
