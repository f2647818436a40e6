#include <queue>
#include <tuple>
#include <vector>

#include "agglomeration.hpp"
#include "ecd/detectors.hpp"
#include "ecd/error.hpp"

namespace ecd {
namespace {

/// Random-walk operator with one self-loop per vertex, weighted by the mean
/// incident weight (1 for isolated vertices).
struct LazyWalk {
  const Graph& g;
  std::vector<double> loop;
  std::vector<double> inv_degree;

  explicit LazyWalk(const Graph& graph) : g(graph), loop(graph.num_vertices()), inv_degree(graph.num_vertices()) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const auto deg = g.degree(v);
      loop[v] = deg == 0 ? 1.0 : g.weighted_degree(v) / static_cast<double>(deg);
      inv_degree[v] = 1.0 / (g.weighted_degree(v) + loop[v]);
    }
  }

  /// next = cur * P
  void step(const std::vector<double>& cur, std::vector<double>& next) const {
    std::fill(next.begin(), next.end(), 0.0);
    for (VertexId j = 0; j < g.num_vertices(); ++j) {
      if (cur[j] == 0.0) continue;
      const double out = cur[j] * inv_degree[j];
      next[j] += out * loop[j];
      auto nb = g.neighbors(j);
      auto wt = g.neighbor_weights(j);
      for (std::size_t k = 0; k < nb.size(); ++k) next[nb[k]] += out * wt[k];
    }
  }

  std::vector<double> profile(VertexId v, unsigned t) const {
    std::vector<double> cur(g.num_vertices(), 0.0), next(g.num_vertices());
    cur[v] = 1.0;
    for (unsigned s = 0; s < t; ++s) {
      step(cur, next);
      cur.swap(next);
    }
    return cur;
  }
};

struct Merge {
  double dsigma;
  std::uint64_t key;
  std::uint32_t i, j;
  std::uint32_t stamp_i, stamp_j;

  bool operator>(const Merge& o) const { return std::tie(dsigma, key) > std::tie(o.dsigma, o.key); }
};

}  // namespace

std::vector<double> walk_profile(const Graph& g, VertexId v, unsigned walk_length) {
  if (v >= g.num_vertices()) throw InvalidArgument("walk_profile: vertex out of range");
  return LazyWalk(g).profile(v, walk_length);
}

Partition walktrap(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed, unsigned walk_length) {
  const auto n = g.num_vertices();
  if (g.total_weight() <= 0.0) return Partition::singletons(n);

  LazyWalk walk(g);
  detail::Agglomeration agg(g, ordering);
  const std::uint64_t tie_seed = mix64(seed ^ 0x57414c4bULL);

  // Community profiles are indexed by agglomeration node (ordering rank).
  std::vector<std::vector<double>> profile(n);
  for (std::uint32_t i = 0; i < n; ++i) profile[i] = walk.profile(ordering.perm[i], walk_length);
  std::vector<double> size(n, 1.0);
  std::vector<std::uint32_t> stamp(n, 0);

  auto dsigma = [&](std::uint32_t a, std::uint32_t b) {
    double r2 = 0.0;
    const auto& pa = profile[a];
    const auto& pb = profile[b];
    for (std::size_t k = 0; k < n; ++k) {
      const double d = pa[k] - pb[k];
      r2 += d * d * walk.inv_degree[k];
    }
    return size[a] * size[b] / (size[a] + size[b]) * r2 / static_cast<double>(n);
  };

  std::priority_queue<Merge, std::vector<Merge>, std::greater<>> heap;
  auto push = [&](std::uint32_t a, std::uint32_t b) {
    heap.push({dsigma(a, b), detail::pair_key(tie_seed, a, b), a, b, stamp[a], stamp[b]});
  };
  for (std::uint32_t i = 0; i < n; ++i) {
    for (const auto& [j, w] : agg.neighbors(i)) {
      if (i < j) push(i, j);
    }
  }

  detail::PeakTracker peak(agg.modularity());
  std::size_t step = 0;
  while (!heap.empty()) {
    const Merge m = heap.top();
    heap.pop();
    if (!agg.alive(m.i) || !agg.alive(m.j) || stamp[m.i] != m.stamp_i || stamp[m.j] != m.stamp_j) continue;

    const auto keep = std::min(m.i, m.j), drop = std::max(m.i, m.j);
    const double total = size[keep] + size[drop];
    auto& pk = profile[keep];
    const auto& pd = profile[drop];
    for (std::size_t k = 0; k < n; ++k) pk[k] = (size[keep] * pk[k] + size[drop] * pd[k]) / total;
    size[keep] = total;
    profile[drop].clear();
    profile[drop].shrink_to_fit();

    agg.merge(keep, drop);
    ++stamp[keep];
    ++stamp[drop];
    peak.observe(++step, agg.modularity());
    for (const auto& [k, w] : agg.neighbors(keep)) push(keep, k);
  }
  return agg.replay(peak.best_step());
}

}  // namespace ecd
