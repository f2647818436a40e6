#pragma once

// Shared bookkeeping for the agglomerative detectors (CNM, walktrap): community
// adjacency with inter-community weights, modularity deltas and the replay of a
// merge sequence back onto the original vertices.

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "ecd/community.hpp"
#include "ecd/graph.hpp"
#include "ecd/random.hpp"

namespace ecd::detail {

class Agglomeration {
 public:
  /// Node i of the agglomeration is vertex perm[i] of the graph, so node ids
  /// follow the sweep order.
  Agglomeration(const Graph& g, const VertexOrdering& ordering)
      : vertex_of_(ordering.perm), nbr_(g.num_vertices()), a_(g.num_vertices(), 0.0),
        alive_(g.num_vertices(), true) {
    const auto rank = ordering.ranks();
    two_w_ = 2.0 * g.total_weight();
    for (const auto& e : g.edges()) {
      const auto i = rank[e.u], j = rank[e.v];
      nbr_[i][j] += e.weight;
      nbr_[j][i] += e.weight;
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      a_[rank[v]] = two_w_ > 0.0 ? g.weighted_degree(v) / two_w_ : 0.0;
    }
    modularity_ = 0.0;
    for (double a : a_) modularity_ -= a * a;
  }

  std::size_t size() const { return nbr_.size(); }
  bool alive(std::uint32_t i) const { return alive_[i]; }
  const std::map<std::uint32_t, double>& neighbors(std::uint32_t i) const { return nbr_[i]; }
  double modularity() const { return modularity_; }

  double delta_q(std::uint32_t i, std::uint32_t j) const {
    auto it = nbr_[i].find(j);
    const double w = it == nbr_[i].end() ? 0.0 : it->second;
    return 2.0 * (w / two_w_ - a_[i] * a_[j]);
  }

  /// Merges j into i.
  void merge(std::uint32_t i, std::uint32_t j) {
    modularity_ += delta_q(i, j);
    for (const auto& [k, w] : nbr_[j]) {
      nbr_[k].erase(j);
      if (k == i) continue;
      nbr_[i][k] += w;
      nbr_[k][i] += w;
    }
    nbr_[j].clear();
    nbr_[i].erase(j);
    a_[i] += a_[j];
    alive_[j] = false;
    merges_.emplace_back(i, j);
  }

  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& merges() const { return merges_; }

  /// Partition obtained by applying the first `steps` merges.
  Partition replay(std::size_t steps) const {
    const auto n = nbr_.size();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t s = 0; s < steps; ++s) parent[find(merges_[s].second)] = find(merges_[s].first);
    std::vector<CommunityId> labels(n);
    for (std::uint32_t i = 0; i < n; ++i) labels[vertex_of_[i]] = find(i);
    return Partition(std::move(labels));
  }

 private:
  std::vector<VertexId> vertex_of_;
  std::vector<std::map<std::uint32_t, double>> nbr_;
  std::vector<double> a_;
  std::vector<bool> alive_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merges_;
  double two_w_ = 0.0;
  double modularity_ = 0.0;
};

/// Seeded pseudo-random priority for an unordered node pair; used to break
/// exact ties between equally good merges.
inline std::uint64_t pair_key(std::uint64_t seed, std::uint32_t i, std::uint32_t j) {
  if (i > j) std::swap(i, j);
  return mix64(seed ^ ((static_cast<std::uint64_t>(i) << 32) | j));
}

/// Tracks the step at which modularity peaks. Later equal values do not
/// displace an earlier peak (fewer merges wins).
class PeakTracker {
 public:
  explicit PeakTracker(double q0) : best_q_(q0) {}
  void observe(std::size_t step, double q) {
    if (q > best_q_ + 1e-12) {
      best_q_ = q;
      best_step_ = step;
    }
  }
  std::size_t best_step() const { return best_step_; }
  double best_q() const { return best_q_; }

 private:
  double best_q_;
  std::size_t best_step_ = 0;
};

}  // namespace ecd::detail
