#include <cmath>
#include <limits>
#include <vector>

#include "agglomeration.hpp"
#include "ecd/detectors.hpp"

namespace ecd {
namespace {

struct Candidate {
  double dq = -std::numeric_limits<double>::infinity();
  std::uint64_t key = 0;
  std::uint32_t i = 0, j = 0;
  bool valid = false;
};

bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  const double eps = 1e-12 * std::max(1.0, std::abs(b.dq));
  if (a.dq > b.dq + eps) return true;
  if (a.dq < b.dq - eps) return false;
  return a.key < b.key;
}

}  // namespace

Partition greedy_cnm(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed) {
  const auto n = g.num_vertices();
  if (g.total_weight() <= 0.0) return Partition::singletons(n);

  detail::Agglomeration agg(g, ordering);
  const std::uint64_t tie_seed = mix64(seed ^ 0x434e4dULL);

  std::vector<Candidate> best(n);
  auto refresh = [&](std::uint32_t i) {
    Candidate c;
    for (const auto& [j, w] : agg.neighbors(i)) {
      Candidate cand{agg.delta_q(i, j), detail::pair_key(tie_seed, i, j), i, j, true};
      if (better(cand, c)) c = cand;
    }
    best[i] = c;
  };
  for (std::uint32_t i = 0; i < n; ++i) refresh(i);

  detail::PeakTracker peak(agg.modularity());
  for (std::size_t step = 1; step < n; ++step) {
    Candidate top;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (agg.alive(i) && better(best[i], top)) top = best[i];
    }
    if (!top.valid) break;
    const auto keep = std::min(top.i, top.j), drop = std::max(top.i, top.j);
    std::vector<std::uint32_t> affected;
    for (const auto& [k, w] : agg.neighbors(drop)) affected.push_back(k);
    for (const auto& [k, w] : agg.neighbors(keep)) affected.push_back(k);
    agg.merge(keep, drop);
    peak.observe(step, agg.modularity());
    best[drop] = Candidate{};
    refresh(keep);
    for (auto k : affected) {
      if (k != keep && k != drop) refresh(k);
    }
  }
  return agg.replay(peak.best_step());
}

}  // namespace ecd
