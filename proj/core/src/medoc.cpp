#include "ecd/medoc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "ecd/ensemble.hpp"
#include "ecd/error.hpp"
#include "ecd/random.hpp"

namespace ecd {
namespace {

std::size_t intersection_size(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

double match_score(Matching m, double inter, double size_a, double size_b) {
  if (m == Matching::kJaccard) return inter / (size_a + size_b - inter);
  return 0.5 * (inter / size_a + inter / size_b);
}

constexpr double kTieEps = 1e-12;

/// Cosine similarity between association rows, using precomputed norms.
struct RowCosine {
  const DenseMatrix& a;
  std::vector<double> norm;

  explicit RowCosine(const DenseMatrix& m) : a(m), norm(m.rows) {
    for (std::size_t v = 0; v < m.rows; ++v) {
      double s = 0.0;
      for (double x : m.row(v)) s += x * x;
      norm[v] = std::sqrt(s);
    }
  }

  double operator()(VertexId u, VertexId v) const {
    if (norm[u] == 0.0 || norm[v] == 0.0) return 0.0;
    const auto ru = a.row(u);
    const auto rv = a.row(v);
    double dot = 0.0;
    for (std::size_t c = 0; c < a.cols; ++c) dot += ru[c] * rv[c];
    return dot / (norm[u] * norm[v]);
  }
};

}  // namespace

double match_jc(std::span<const VertexId> a, std::span<const VertexId> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("match_jc: empty community");
  const double inter = static_cast<double>(intersection_size(a, b));
  return match_score(Matching::kJaccard, inter, static_cast<double>(a.size()), static_cast<double>(b.size()));
}

double match_ap(std::span<const VertexId> a, std::span<const VertexId> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("match_ap: empty community");
  const double inter = static_cast<double>(intersection_size(a, b));
  return match_score(Matching::kAveragePrecision, inter, static_cast<double>(a.size()), static_cast<double>(b.size()));
}

MetaGraph build_meta_graph(std::span<const Partition> bases, Matching matching) {
  if (bases.size() < 2) throw InvalidArgument("build_meta_graph: need at least two base partitions");
  const auto n = bases.front().num_vertices();
  MetaGraph mg;
  std::vector<std::uint32_t> offset(bases.size());
  for (std::uint32_t p = 0; p < bases.size(); ++p) {
    if (bases[p].num_vertices() != n) throw InvalidArgument("build_meta_graph: base partition size mismatch");
    offset[p] = static_cast<std::uint32_t>(mg.nodes.size());
    auto comms = bases[p].communities();
    for (CommunityId c = 0; c < comms.size(); ++c) {
      mg.nodes.push_back({p, c});
      mg.members.push_back(std::move(comms[c]));
    }
  }

  std::unordered_map<std::uint64_t, std::uint32_t> overlap;
  std::vector<std::uint32_t> node_of(bases.size());
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t p = 0; p < bases.size(); ++p) node_of[p] = offset[p] + bases[p].label(v);
    for (std::size_t p = 0; p < bases.size(); ++p) {
      for (std::size_t q = p + 1; q < bases.size(); ++q) {
        ++overlap[(static_cast<std::uint64_t>(node_of[p]) << 32) | node_of[q]];
      }
    }
  }

  GraphBuilder b(mg.nodes.size());
  std::vector<std::pair<std::uint64_t, std::uint32_t>> pairs(overlap.begin(), overlap.end());
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [key, count] : pairs) {
    const auto i = static_cast<VertexId>(key >> 32);
    const auto j = static_cast<VertexId>(key & 0xffffffffu);
    const double w = match_score(matching, count, static_cast<double>(mg.members[i].size()),
                                 static_cast<double>(mg.members[j].size()));
    if (w > 0.0) b.add_edge(i, j, w);
  }
  mg.graph = b.build();
  return mg;
}

Partition meta_cluster(const MetaGraph& mg, const BaseDetector& reclusterer, std::uint64_t seed) {
  if (mg.nodes.empty()) throw InvalidArgument("meta_cluster: empty meta-graph");
  const auto ordering = random_ordering(mg.nodes.size(), derive_seed(seed, {0x3e7a, 0}));
  return reclusterer.detect(mg.graph, ordering, derive_seed(seed, {0x3e7a, 1}));
}

double assoc_simple(VertexId v, std::span<const VertexSet> members) {
  if (members.empty()) throw InvalidArgument("assoc_simple: empty meta-community");
  std::size_t hits = 0;
  for (const auto& c : members) hits += std::binary_search(c.begin(), c.end(), v) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(members.size());
}

double assoc_weighted(VertexId v, std::span<const VertexSet> members) {
  std::vector<const VertexSet*> containing;
  for (const auto& c : members) {
    if (std::binary_search(c.begin(), c.end(), v)) containing.push_back(&c);
  }
  if (containing.empty()) return 0.0;
  std::vector<VertexId> inter = *containing.front();
  std::vector<VertexId> uni = *containing.front();
  std::vector<VertexId> scratch;
  for (std::size_t i = 1; i < containing.size(); ++i) {
    const auto& c = *containing[i];
    scratch.clear();
    std::set_intersection(inter.begin(), inter.end(), c.begin(), c.end(), std::back_inserter(scratch));
    inter.swap(scratch);
    scratch.clear();
    std::set_union(uni.begin(), uni.end(), c.begin(), c.end(), std::back_inserter(scratch));
    uni.swap(scratch);
  }
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

DenseMatrix association_matrix(std::size_t num_vertices, const MetaGraph& mg, const Partition& meta,
                               Association association) {
  if (meta.num_vertices() != mg.nodes.size()) throw InvalidArgument("association_matrix: meta partition size mismatch");
  const auto groups = meta.communities();
  DenseMatrix a(num_vertices, groups.size());

  // Counting kernel for |∩| / |∪|: count[u] = number of v's containing communities that hold u.
  std::vector<std::uint32_t> count(num_vertices, 0);
  std::vector<VertexId> touched;
  std::vector<std::vector<std::uint32_t>> containing(num_vertices);

  for (std::size_t l = 0; l < groups.size(); ++l) {
    const auto& group = groups[l];
    std::vector<VertexId> present;
    for (std::uint32_t k = 0; k < group.size(); ++k) {
      for (VertexId v : mg.members[group[k]]) {
        if (v >= num_vertices) throw InvalidArgument("association_matrix: vertex out of range");
        if (containing[v].empty()) present.push_back(v);
        containing[v].push_back(k);
      }
    }
    const double gamma = static_cast<double>(group.size());
    for (VertexId v : present) {
      const auto& hold = containing[v];
      if (association == Association::kSimple) {
        a(v, l) = static_cast<double>(hold.size()) / gamma;
      } else {
        for (auto k : hold) {
          for (VertexId u : mg.members[group[k]]) {
            if (count[u]++ == 0) touched.push_back(u);
          }
        }
        std::size_t inter = 0;
        for (VertexId u : touched) {
          if (count[u] == hold.size()) ++inter;
          count[u] = 0;
        }
        a(v, l) = static_cast<double>(inter) / static_cast<double>(touched.size());
        touched.clear();
      }
    }
    for (VertexId v : present) containing[v].clear();
  }
  return a;
}

std::vector<CommunityId> argmax_assignment(const DenseMatrix& a, const Graph& g) {
  if (a.rows != g.num_vertices()) throw InvalidArgument("argmax_assignment: matrix rows do not match graph");
  if (a.cols == 0) throw InvalidArgument("argmax_assignment: no meta-communities");
  constexpr auto kUnset = static_cast<CommunityId>(-1);
  std::vector<CommunityId> assign(a.rows, kUnset);
  std::vector<std::vector<CommunityId>> tied(a.rows);
  for (std::size_t v = 0; v < a.rows; ++v) {
    const auto row = a.row(v);
    const double best = *std::max_element(row.begin(), row.end());
    for (CommunityId c = 0; c < a.cols; ++c) {
      if (best - row[c] <= kTieEps) tied[v].push_back(c);
    }
    if (tied[v].size() == 1) assign[v] = tied[v].front();
  }
  std::vector<std::size_t> votes(a.cols, 0);
  for (VertexId v = 0; v < a.rows; ++v) {
    if (assign[v] != kUnset) continue;
    for (VertexId u : g.neighbors(v)) {
      if (assign[u] != kUnset) ++votes[assign[u]];
    }
    CommunityId pick = tied[v].front();
    for (auto c : tied[v]) {
      if (votes[c] > votes[pick]) pick = c;
    }
    assign[v] = pick;
    for (VertexId u : g.neighbors(v)) {
      if (assign[u] != kUnset) votes[assign[u]] = 0;
    }
  }
  return assign;
}

Partition extract_disjoint(const DenseMatrix& a, const Graph& g) { return Partition(argmax_assignment(a, g)); }

double membership_probability(double mean_similarity) {
  const double e = std::exp(mean_similarity * mean_similarity);
  return e / (1.0 + e);
}

double internal_similarity(const DenseMatrix& a, const Graph& g, std::span<const VertexId> community) {
  RowCosine cosine(a);
  double sum = 0.0;
  std::size_t edges = 0;
  for (VertexId u : community) {
    for (VertexId v : g.neighbors(u)) {
      if (v > u && std::binary_search(community.begin(), community.end(), v)) {
        sum += cosine(u, v);
        ++edges;
      }
    }
  }
  return edges == 0 ? 0.0 : sum / static_cast<double>(edges);
}

std::vector<ColumnCommunity> auto_threshold_communities(const DenseMatrix& a, const Graph& g) {
  const auto assign = argmax_assignment(a, g);
  const auto n = g.num_vertices();
  RowCosine cosine(a);

  struct Community {
    CommunityId column;
    VertexSet members;
    double sim_sum = 0.0;
    std::size_t edges = 0;
    double probability = 0.5;
  };
  std::vector<Community> comms;
  {
    std::vector<VertexSet> by_column(a.cols);
    for (VertexId v = 0; v < n; ++v) by_column[assign[v]].push_back(v);
    for (CommunityId c = 0; c < a.cols; ++c) {
      if (!by_column[c].empty()) comms.push_back({c, std::move(by_column[c])});
    }
  }

  std::vector<char> inside(n, 0);
  for (auto& c : comms) {
    for (VertexId u : c.members) inside[u] = 1;
    for (VertexId u : c.members) {
      for (VertexId v : g.neighbors(u)) {
        if (v > u && inside[v]) {
          c.sim_sum += cosine(u, v);
          ++c.edges;
        }
      }
    }
    for (VertexId u : c.members) inside[u] = 0;
    c.probability = membership_probability(c.edges == 0 ? 0.0 : c.sim_sum / static_cast<double>(c.edges));
  }

  std::vector<std::size_t> order(comms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (comms[x].probability != comms[y].probability) return comms[x].probability > comms[y].probability;
    if (comms[x].members.size() != comms[y].members.size()) return comms[x].members.size() > comms[y].members.size();
    return comms[x].column < comms[y].column;
  });

  std::vector<VertexId> candidates;
  for (auto idx : order) {
    auto& c = comms[idx];
    for (VertexId u : c.members) inside[u] = 1;
    candidates.clear();
    for (VertexId u : c.members) {
      for (VertexId v : g.neighbors(u)) {
        if (!inside[v]) candidates.push_back(v);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](VertexId x, VertexId y) { return a(x, c.column) > a(y, c.column); });

    for (VertexId v : candidates) {
      double add_sum = 0.0;
      std::size_t add_edges = 0;
      for (VertexId u : g.neighbors(v)) {
        if (inside[u]) {
          add_sum += cosine(v, u);
          ++add_edges;
        }
      }
      const std::size_t edges = c.edges + add_edges;
      const double p = membership_probability(edges == 0 ? 0.0 : (c.sim_sum + add_sum) / static_cast<double>(edges));
      if (p >= c.probability) {
        inside[v] = 1;
        c.members.push_back(v);
        c.sim_sum += add_sum;
        c.edges = edges;
        c.probability = p;
      }
    }
    for (VertexId u : c.members) inside[u] = 0;
  }

  std::vector<ColumnCommunity> out;
  out.reserve(comms.size());
  for (auto& c : comms) {
    std::sort(c.members.begin(), c.members.end());
    out.push_back({c.column, std::move(c.members)});
  }
  return out;
}

Cover auto_threshold_cover(const DenseMatrix& a, const Graph& g) {
  std::vector<VertexSet> sets;
  for (auto& c : auto_threshold_communities(a, g)) sets.push_back(std::move(c.members));
  return Cover(g.num_vertices(), std::move(sets));
}

FuzzyAssignment extract_fuzzy(const DenseMatrix& a) {
  if (a.cols == 0) throw InvalidArgument("extract_fuzzy: no meta-communities");
  std::vector<FuzzyAssignment::Row> rows(a.rows);
  for (std::size_t v = 0; v < a.rows; ++v) {
    const auto row = a.row(v);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (CommunityId c = 0; c < a.cols; ++c) {
      const double p = sum > 0.0 ? row[c] / sum : 1.0 / static_cast<double>(a.cols);
      if (p > 0.0) rows[v].emplace_back(c, p);
    }
  }
  return FuzzyAssignment(a.cols, std::move(rows));
}

MedocResult medoc_from_solutions(const Graph& g, std::span<const Partition> bases, std::uint64_t seed,
                                 const MedocOptions& options) {
  MedocResult r;
  r.meta_graph = build_meta_graph(bases, options.matching);
  r.meta_communities = meta_cluster(r.meta_graph, options.reclusterer, seed);
  r.association = association_matrix(g.num_vertices(), r.meta_graph, r.meta_communities, options.association);
  r.disjoint = extract_disjoint(r.association, g);
  r.overlapping = auto_threshold_cover(r.association, g);
  r.fuzzy = extract_fuzzy(r.association);
  return r;
}

MedocResult medoc(const Graph& g, std::span<const BaseDetector> detectors, std::size_t num_orderings,
                  std::uint64_t seed, const MedocOptions& options) {
  auto set = generate_base_solutions(g, detectors, num_orderings, seed, options.threads);
  std::vector<Partition> bases;
  bases.reserve(set.size());
  for (auto& s : set.solutions) bases.push_back(std::move(s.partition));
  return medoc_from_solutions(g, bases, seed, options);
}

}  // namespace ecd
