#include <algorithm>
#include <numeric>
#include <vector>

#include "ecd/detectors.hpp"
#include "ecd/random.hpp"

namespace ecd {

LabelPropagationResult label_propagation_run(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed,
                                             std::size_t max_sweeps) {
  const auto n = g.num_vertices();
  Rng rng(mix64(seed ^ 0x4c5041ULL));
  std::vector<CommunityId> label(n);
  std::iota(label.begin(), label.end(), CommunityId{0});

  std::vector<double> weight(n, 0.0);
  std::vector<CommunityId> touched;
  std::vector<CommunityId> ties;

  LabelPropagationResult result;
  for (result.sweeps = 0; result.sweeps < max_sweeps;) {
    ++result.sweeps;
    bool changed = false;
    for (VertexId v : ordering.perm) {
      auto nb = g.neighbors(v);
      if (nb.empty()) continue;
      auto wt = g.neighbor_weights(v);
      touched.clear();
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const auto l = label[nb[k]];
        if (weight[l] == 0.0) touched.push_back(l);
        weight[l] += wt[k];
      }
      double best = 0.0;
      for (auto l : touched) best = std::max(best, weight[l]);
      const double eps = 1e-12 * std::max(1.0, best);
      ties.clear();
      for (auto l : touched) {
        if (weight[l] >= best - eps) ties.push_back(l);
      }
      const bool keep = std::find(ties.begin(), ties.end(), label[v]) != ties.end();
      if (!keep && !ties.empty()) {
        std::sort(ties.begin(), ties.end());
        label[v] = ties.size() == 1 ? ties.front() : ties[rng() % ties.size()];
        changed = true;
      }
      for (auto l : touched) weight[l] = 0.0;
    }
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  result.partition = Partition(std::move(label));
  return result;
}

Partition label_propagation(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed) {
  return label_propagation_run(g, ordering, seed).partition;
}

}  // namespace ecd
