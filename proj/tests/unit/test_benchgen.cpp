#include <gtest/gtest.h>

#include <cmath>

#include "ecd/benchgen.hpp"
#include "ecd/error.hpp"
#include "planted.hpp"

namespace ecd {
namespace {

TEST(BenchConfig, LargeDefaults) {
  const auto c = large_bench_config();
  EXPECT_EQ(c.n, 10000u);
  EXPECT_DOUBLE_EQ(c.k_avg, 50.0);
  EXPECT_EQ(c.k_max, 150u);
  EXPECT_DOUBLE_EQ(c.mu, 0.3);
  EXPECT_EQ(c.c_min, 20u);
  EXPECT_EQ(c.c_max, 100u);
}

TEST(BenchConfig, RejectsInvalid) {
  BenchConfig c;
  c.mu = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = BenchConfig{};
  c.c_min = 200;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = BenchConfig{};
  c.k_avg = 1.0;  // below the smallest achievable power-law mean
  EXPECT_THROW(gen_disjoint(c), InvalidArgument);
}

TEST(Disjoint, DefaultsHitDegreeAndMixing) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    BenchConfig c;
    c.seed = seed;
    auto b = gen_disjoint(c);
    EXPECT_NEAR(b.stats.mean_degree, c.k_avg, 0.1 * c.k_avg) << seed;
    EXPECT_NEAR(b.stats.mixing, c.mu, 0.05) << seed;
    for (auto s : b.truth.sizes()) {
      EXPECT_GE(s, c.c_min);
      EXPECT_LE(s, c.c_max);
    }
  }
}

TEST(Disjoint, DeterministicInSeed) {
  auto a = gen_disjoint(testing::desk_config(300, 0.3, 4));
  auto b = gen_disjoint(testing::desk_config(300, 0.3, 4));
  EXPECT_EQ(a.truth, b.truth);
  ASSERT_EQ(a.graph.num_edges(), b.graph.num_edges());
  for (std::size_t i = 0; i < a.graph.num_edges(); ++i) {
    EXPECT_EQ(a.graph.edges()[i].u, b.graph.edges()[i].u);
    EXPECT_EQ(a.graph.edges()[i].v, b.graph.edges()[i].v);
  }
}

TEST(Disjoint, MixingTracksMu) {
  for (double mu : {0.1, 0.4, 0.6}) {
    auto b = gen_disjoint(testing::desk_config(500, mu, 2));
    EXPECT_NEAR(b.stats.mixing, mu, 0.05) << mu;
  }
}

TEST(Overlapping, ZeroOverlapIsAPartition) {
  auto b = gen_overlapping(testing::desk_config(300, 0.3, 1));
  EXPECT_TRUE(b.truth.is_partition());
}

TEST(Overlapping, OverlapCountAndMixing) {
  auto c = testing::desk_config(500, 0.3, 3);
  c.overlap_fraction = 0.1;
  auto b = gen_overlapping(c);
  std::size_t multi = 0;
  for (const auto& m : b.truth.memberships()) {
    EXPECT_FALSE(m.empty());
    multi += m.size() > 1;
    EXPECT_LE(m.size(), c.overlap_memberships);
  }
  EXPECT_EQ(multi, 50u);
  EXPECT_NEAR(b.stats.mixing, 0.3, 0.05);
}

TEST(Fuzzy, RowsSumToOneAndEdgeCountConcentrates) {
  auto c = testing::desk_config(300, 0.3, 5);
  c.overlap_fraction = 0.2;
  auto b = gen_fuzzy(c);
  for (VertexId v = 0; v < c.n; ++v) {
    double s = 0.0;
    for (auto [k, p] : b.truth.row(v)) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
  // The edge count is a sum of independent Bernoulli draws whose means add up
  // to the target; its variance is at most that mean.
  const double mean = b.stats.expected_edges;
  EXPECT_NEAR(static_cast<double>(b.stats.edges), mean, 3.0 * std::sqrt(mean));
  EXPECT_GT(b.stats.p1, b.stats.p0);
}

}  // namespace
}  // namespace ecd
