#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "ecd/detectors.hpp"
#include "ecd/random.hpp"

namespace ecd {
namespace {

struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
  std::vector<double> loop;                                         // internal weight folded into each node
  std::vector<double> strength;                                     // includes 2 * loop
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph from_graph(const Graph& g) {
  LevelGraph lg;
  const auto n = g.num_vertices();
  lg.adj.resize(n);
  lg.loop.assign(n, 0.0);
  lg.strength.assign(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    auto wt = g.neighbor_weights(v);
    lg.adj[v].reserve(nb.size());
    for (std::size_t k = 0; k < nb.size(); ++k) lg.adj[v].emplace_back(nb[k], wt[k]);
    lg.strength[v] = g.weighted_degree(v);
  }
  lg.two_m = 2.0 * g.total_weight();
  return lg;
}

/// One local-moving phase. Returns true when at least one node changed community.
bool move_nodes(const LevelGraph& lg, const std::vector<std::uint32_t>& order, std::vector<std::uint32_t>& comm,
                Rng& rng) {
  const auto n = lg.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += lg.strength[i];

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> ties;
  bool any_move = false;

  constexpr std::size_t kMaxSweeps = 1000;
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool moved = false;
    for (std::uint32_t i : order) {
      const double ki = lg.strength[i];
      if (ki <= 0.0) continue;
      const std::uint32_t own = comm[i];

      touched.clear();
      for (auto [j, w] : lg.adj[i]) {
        const auto c = comm[j];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += w;
      }
      tot[own] -= ki;

      const double eps = 1e-10 * ki;
      double best = link[own] - tot[own] * ki / lg.two_m;
      bool own_in_ties = true;
      ties.clear();
      for (auto c : touched) {
        if (c == own) continue;
        const double gain = link[c] - tot[c] * ki / lg.two_m;
        if (gain > best + eps) {
          best = gain;
          own_in_ties = false;
          ties.assign(1, c);
        } else if (gain >= best - eps) {
          ties.push_back(c);
        }
      }

      std::uint32_t target = own;
      if (!own_in_ties && !ties.empty()) {
        std::sort(ties.begin(), ties.end());
        target = ties.size() == 1 ? ties.front() : ties[rng() % ties.size()];
      }
      tot[target] += ki;
      if (target != own) {
        comm[i] = target;
        moved = true;
      }
      for (auto c : touched) link[c] = 0.0;
    }
    any_move = any_move || moved;
    if (!moved) break;
  }
  return any_move;
}

/// Renumbers communities 0..c-1 in order of first appearance along `order`.
std::size_t compact(const std::vector<std::uint32_t>& order, std::vector<std::uint32_t>& comm) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> remap(comm.size(), kUnset);
  std::uint32_t next = 0;
  for (auto i : order) {
    if (remap[comm[i]] == kUnset) remap[comm[i]] = next++;
  }
  for (auto& c : comm) c = remap[c];
  return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<std::uint32_t>& comm, std::size_t num_comm) {
  LevelGraph out;
  out.adj.resize(num_comm);
  out.loop.assign(num_comm, 0.0);
  out.strength.assign(num_comm, 0.0);
  out.two_m = lg.two_m;

  std::vector<std::vector<std::pair<std::uint32_t, double>>> raw(num_comm);
  for (std::uint32_t i = 0; i < lg.size(); ++i) {
    const auto ci = comm[i];
    out.loop[ci] += lg.loop[i];
    out.strength[ci] += lg.strength[i];
    for (auto [j, w] : lg.adj[i]) {
      if (j < i) continue;
      const auto cj = comm[j];
      if (ci == cj) {
        out.loop[ci] += w;
      } else {
        raw[ci].emplace_back(cj, w);
        raw[cj].emplace_back(ci, w);
      }
    }
  }
  for (std::size_t c = 0; c < num_comm; ++c) {
    auto& r = raw[c];
    std::sort(r.begin(), r.end());
    for (const auto& [d, w] : r) {
      if (!out.adj[c].empty() && out.adj[c].back().first == d) {
        out.adj[c].back().second += w;
      } else {
        out.adj[c].emplace_back(d, w);
      }
    }
  }
  return out;
}

}  // namespace

Partition louvain(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed) {
  const auto n = g.num_vertices();
  if (g.total_weight() <= 0.0) return Partition::singletons(n);

  Rng rng(mix64(seed ^ 0x4c4f555641494eULL));
  LevelGraph lg = from_graph(g);
  std::vector<std::uint32_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0u);
  std::vector<std::uint32_t> order(ordering.perm.begin(), ordering.perm.end());

  while (true) {
    std::vector<std::uint32_t> comm(lg.size());
    std::iota(comm.begin(), comm.end(), 0u);
    if (!move_nodes(lg, order, comm, rng)) break;
    const auto num_comm = compact(order, comm);
    for (auto& m : membership) m = comm[m];
    if (num_comm == lg.size()) break;
    lg = aggregate(lg, comm, num_comm);
    order.resize(num_comm);
    std::iota(order.begin(), order.end(), 0u);
  }
  return Partition(std::move(membership));
}

}  // namespace ecd
