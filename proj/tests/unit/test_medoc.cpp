#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "ecd/benchgen.hpp"
#include "ecd/error.hpp"
#include "ecd/medoc.hpp"
#include "ecd/metrics.hpp"
#include "oracles.hpp"
#include "planted.hpp"
#include "toy.hpp"

namespace ecd {
namespace {

TEST(Matching, ToyValues) {
  auto t = testing::load_toy();
  EXPECT_NEAR(match_jc(t.set("ABCD"), t.set("ABC")), 0.75, 1e-12);
  EXPECT_NEAR(match_ap(t.set("ABCD"), t.set("ABC")), 0.875, 1e-12);
}

TEST(Matching, IdenticalAndDisjoint) {
  VertexSet a{1, 2, 3}, b{4, 5};
  EXPECT_DOUBLE_EQ(match_jc(a, a), 1.0);
  EXPECT_DOUBLE_EQ(match_ap(a, a), 1.0);
  EXPECT_DOUBLE_EQ(match_jc(a, b), 0.0);
  EXPECT_DOUBLE_EQ(match_ap(a, b), 0.0);
}

TEST(MetaGraph, ToyIsThreePartite) {
  auto t = testing::load_toy();
  auto mg = build_meta_graph(t.bases);
  ASSERT_EQ(mg.nodes.size(), 6u);
  for (const auto& e : mg.graph.edges()) EXPECT_NE(mg.nodes[e.u].solution, mg.nodes[e.v].solution);
  // {A,B,C,D} of p1 against {A,B,C} of p2.
  EXPECT_NEAR(*mg.graph.edge_weight(0, 2), 0.75, 1e-12);
  // The two identical partitions give unit edges.
  EXPECT_NEAR(*mg.graph.edge_weight(2, 4), 1.0, 1e-12);
  EXPECT_FALSE(mg.graph.has_edge(2, 5));
}

TEST(MetaGraph, IdenticalPartitionsGivePerfectMatching) {
  Partition p({0, 0, 1, 1, 2, 2});
  std::vector<Partition> two{p, p};
  auto mg = build_meta_graph(two);
  EXPECT_EQ(mg.graph.num_edges(), 3u);
  for (const auto& e : mg.graph.edges()) EXPECT_DOUBLE_EQ(e.weight, 1.0);
}

TEST(MetaGraph, EdgeCountBound) {
  std::mt19937_64 rng(4);
  std::vector<Partition> ps;
  for (int i = 0; i < 4; ++i) ps.emplace_back(oracle::random_labels(40, 5, rng));
  auto mg = build_meta_graph(ps);
  std::size_t bound = 0;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) bound += ps[i].num_communities() * ps[j].num_communities();
  EXPECT_LE(mg.graph.num_edges(), bound);
  EXPECT_THROW(build_meta_graph(std::span<const Partition>(ps.data(), 1)), InvalidArgument);
}

TEST(MetaCluster, ToyFindsTwoMetaCommunities) {
  auto t = testing::load_toy();
  auto mg = build_meta_graph(t.bases);
  auto meta = meta_cluster(mg, detector_by_name("louvain"), 1);
  EXPECT_EQ(meta, Partition({0, 1, 0, 1, 0, 1}));
}

TEST(MetaCluster, IdenticalBasesGiveOneMetaCommunityPerCommunity) {
  const auto bench = gen_disjoint(testing::desk_config(200, 0.3, 1));
  std::vector<Partition> same(4, bench.truth);
  auto mg = build_meta_graph(same);
  auto meta = meta_cluster(mg, detector_by_name("louvain"), 2);
  EXPECT_EQ(meta.num_communities(), bench.truth.num_communities());
}

TEST(Association, ToyValues) {
  auto t = testing::load_toy();
  std::vector<VertexSet> mc1{t.set("ABCD"), t.set("ABC"), t.set("ABC")};
  EXPECT_NEAR(assoc_simple(t.id('A'), mc1), 1.0, 1e-12);
  EXPECT_NEAR(assoc_weighted(t.id('A'), mc1), 0.75, 1e-12);
  EXPECT_NEAR(assoc_simple(t.id('D'), mc1), 1.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(assoc_simple(t.id('E'), mc1), 0.0);
  EXPECT_DOUBLE_EQ(assoc_weighted(t.id('E'), mc1), 0.0);
}

TEST(Association, SingleContainingSetIsOne) {
  std::vector<VertexSet> m{{0, 1, 2, 3}, {4, 5}};
  EXPECT_DOUBLE_EQ(assoc_weighted(0, m), 1.0);
  EXPECT_DOUBLE_EQ(assoc_simple(0, m), 0.5);
}

TEST(Association, WeightedMatchesSetAlgebra) {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<VertexSet> m(4);
    for (auto& s : m)
      for (VertexId v = 0; v < 12; ++v)
        if (coin(rng)) s.push_back(v);
    for (VertexId v = 0; v < 12; ++v) {
      std::set<VertexId> inter, uni;
      bool first = true;
      for (const auto& s : m) {
        if (!std::binary_search(s.begin(), s.end(), v)) continue;
        std::set<VertexId> cur(s.begin(), s.end());
        uni.insert(cur.begin(), cur.end());
        if (first) {
          inter = cur;
          first = false;
        } else {
          std::set<VertexId> keep;
          for (auto x : inter)
            if (cur.count(x)) keep.insert(x);
          inter = keep;
        }
      }
      const double want = uni.empty() ? 0.0 : static_cast<double>(inter.size()) / static_cast<double>(uni.size());
      EXPECT_NEAR(assoc_weighted(v, m), want, 1e-15);
    }
  }
}

TEST(AssociationMatrix, ToySimple) {
  auto t = testing::load_toy();
  auto mg = build_meta_graph(t.bases);
  Partition meta({0, 1, 0, 1, 0, 1});
  auto a = association_matrix(7, mg, meta, Association::kSimple);
  EXPECT_NEAR(a(t.id('A'), 0), 1.0, 1e-12);
  EXPECT_NEAR(a(t.id('D'), 0), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(a(t.id('D'), 1), 2.0 / 3.0, 1e-12);
  auto w = association_matrix(7, mg, meta, Association::kWeighted);
  EXPECT_NEAR(w(t.id('A'), 0), 0.75, 1e-12);
}

TEST(Argmax, ToyDisjoint) {
  auto t = testing::load_toy();
  auto mg = build_meta_graph(t.bases);
  auto a = association_matrix(7, mg, Partition({0, 1, 0, 1, 0, 1}), Association::kSimple);
  auto p = extract_disjoint(a, t.graph);
  EXPECT_EQ(p.communities(), (std::vector<VertexSet>{t.set("ABC"), t.set("DEFG")}));
}

// Path 0-1-2-3 with two columns. Vertices 0 and 3 are decided, 1 and 2 tie.
// Hand enumeration: 1 sees one neighbor in column 0 (vertex 0) and none in
// column 1, so it joins column 0; then 2 sees one neighbor in each column
// (1 and 3) and falls back to the lower column 0.
TEST(Argmax, TiesFollowNeighborMajority) {
  auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  DenseMatrix a(4, 2);
  a(0, 0) = 1.0;
  a(1, 0) = a(1, 1) = 0.5;
  a(2, 0) = a(2, 1) = 0.5;
  a(3, 1) = 1.0;
  EXPECT_EQ(argmax_assignment(a, g), (std::vector<CommunityId>{0, 0, 0, 1}));

  // Same ties, but vertex 2 now has an extra decided neighbor in column 1.
  auto g2 = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {2, 4}});
  DenseMatrix b(5, 2);
  b(0, 0) = 1.0;
  b(1, 0) = b(1, 1) = 0.5;
  b(2, 0) = b(2, 1) = 0.5;
  b(3, 1) = b(4, 1) = 1.0;
  EXPECT_EQ(argmax_assignment(b, g2), (std::vector<CommunityId>{0, 0, 1, 1, 1}));
}

TEST(Threshold, MembershipProbabilityValues) {
  EXPECT_NEAR(membership_probability(0.0), 0.5, 1e-12);
  EXPECT_NEAR(membership_probability(0.5), std::exp(0.25) / (1.0 + std::exp(0.25)), 1e-12);
  EXPECT_NEAR(membership_probability(1.0), std::exp(1.0) / (1.0 + std::exp(1.0)), 1e-12);
}

TEST(Threshold, ToyKeepsDOutOfFirstCommunity) {
  auto t = testing::load_toy();
  auto mg = build_meta_graph(t.bases);
  auto a = association_matrix(7, mg, Partition({0, 1, 0, 1, 0, 1}), Association::kSimple);
  const auto dc1 = t.set("ABC");
  auto with_d = t.set("ABCD");
  EXPECT_NEAR(internal_similarity(a, t.graph, dc1), 1.0, 1e-12);
  EXPECT_LT(membership_probability(internal_similarity(a, t.graph, with_d)),
            membership_probability(internal_similarity(a, t.graph, dc1)));
  auto cover = auto_threshold_cover(a, t.graph);
  for (const auto& c : cover.communities()) {
    if (std::binary_search(c.begin(), c.end(), t.id('A'))) {
      EXPECT_FALSE(std::binary_search(c.begin(), c.end(), t.id('D')));
    }
  }
}

TEST(Threshold, CoverContainsArgmaxCommunities) {
  const auto bench = gen_disjoint(testing::desk_config(200, 0.3, 3));
  auto r = medoc(bench.graph, default_detectors(), 3, 4);
  const auto mem = r.overlapping.memberships();
  const auto& labels = r.disjoint.labels();
  for (VertexId v = 0; v < 200; ++v) {
    EXPECT_FALSE(mem[v].empty());
    // Every vertex shares its cover community with its disjoint community mates.
    const auto mates = r.disjoint.communities()[labels[v]];
    bool found = false;
    for (auto c : mem[v]) {
      const auto& members = r.overlapping.communities()[c];
      found = found || std::includes(members.begin(), members.end(), mates.begin(), mates.end());
    }
    EXPECT_TRUE(found) << v;
  }
}

TEST(Fuzzy, RowNormalization) {
  DenseMatrix a(3, 2);
  a(0, 0) = 1.0;
  a(1, 0) = a(1, 1) = 1.0;
  auto f = extract_fuzzy(a);
  EXPECT_DOUBLE_EQ(f.prob(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(f.prob(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(f.prob(2, 1), 0.5);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DenseMatrix r(50, 7);
  for (auto& x : r.data) x = u(rng);
  auto g = extract_fuzzy(r);
  for (VertexId v = 0; v < 50; ++v) {
    double s = 0.0;
    for (auto [c, p] : g.row(v)) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Medoc, UnanimousBasesAreAFixpoint) {
  const auto bench = gen_disjoint(testing::desk_config(200, 0.3, 5));
  std::vector<Partition> same(6, bench.truth);
  auto r = medoc_from_solutions(bench.graph, same, 1);
  EXPECT_EQ(r.disjoint, bench.truth);
}

TEST(Medoc, RecoversPlantedStructure) {
  double total = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto bench = gen_disjoint(testing::desk_config(300, 0.1, seed));
    total += nmi(medoc(bench.graph, default_detectors(), 5, seed).disjoint, bench.truth);
  }
  EXPECT_GE(total / 3.0, 0.9);
}

TEST(Medoc, OverlappingBeatsArgmaxBaseline) {
  double cover_total = 0.0, argmax_total = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto cfg = testing::desk_config(300, 0.2, seed);
    cfg.overlap_fraction = 0.1;
    const auto bench = gen_overlapping(cfg);
    auto r = medoc(bench.graph, default_detectors(), 5, seed);
    cover_total += onmi(r.overlapping, bench.truth);
    argmax_total += onmi(Cover::from_partition(r.disjoint), bench.truth);
  }
  EXPECT_GE(cover_total, argmax_total);
}

}  // namespace
}  // namespace ecd
