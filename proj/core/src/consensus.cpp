#include <vector>

#include "ecd/ensemble.hpp"
#include "ecd/error.hpp"
#include "ecd/random.hpp"

namespace ecd {
namespace {

constexpr double kUnanimityEps = 1e-12;

bool block_diagonal(const std::vector<double>& d) {
  for (double x : d) {
    if (x > kUnanimityEps && x < 1.0 - kUnanimityEps) return false;
  }
  return true;
}

Graph consensus_graph(const std::vector<double>& d, std::size_t n, double threshold) {
  GraphBuilder b(n);
  for (VertexId u = 0; u < n; ++u) {
    const double* row = d.data() + static_cast<std::size_t>(u) * n;
    for (VertexId v = u + 1; v < n; ++v) {
      if (row[v] >= threshold && row[v] > 0.0) b.add_edge(u, v, row[v]);
    }
  }
  return b.build();
}

Partition blocks(const Graph& g) { return Partition(connected_components(g)); }

}  // namespace

ConsensusResult consensus_from_solutions(std::span<const Partition> initial, std::span<const BaseDetector> detectors,
                                         std::size_t num_orderings, std::uint64_t seed,
                                         const ConsensusOptions& options) {
  if (initial.empty()) throw InvalidArgument("consensus: no base partitions");
  if (!(options.threshold > 0.0 && options.threshold <= 1.0)) {
    throw InvalidArgument("consensus: threshold must lie in (0, 1]");
  }
  if (options.max_rounds == 0) throw InvalidArgument("consensus: max_rounds must be at least 1");
  const auto n = initial.front().num_vertices();

  std::vector<Partition> current(initial.begin(), initial.end());
  ConsensusResult result;
  for (std::size_t round = 1;; ++round) {
    const auto d = co_occurrence(current);
    result.rounds = round;
    if (block_diagonal(d)) {
      result.converged = true;
      result.partition = blocks(consensus_graph(d, n, 1.0 - kUnanimityEps));
      return result;
    }
    const Graph cg = consensus_graph(d, n, options.threshold);
    if (round == options.max_rounds || cg.num_edges() == 0) {
      result.partition = blocks(cg);
      return result;
    }
    auto next = generate_base_solutions(cg, detectors, num_orderings, derive_seed(seed, {0xc0, round}), options.threads);
    current.clear();
    for (auto& s : next.solutions) current.push_back(std::move(s.partition));
  }
}

ConsensusResult consensus_clustering(const Graph& g, std::span<const BaseDetector> detectors, std::size_t num_orderings,
                                     std::uint64_t seed, const ConsensusOptions& options) {
  auto base = generate_base_solutions(g, detectors, num_orderings, seed, options.threads);
  std::vector<Partition> parts;
  parts.reserve(base.size());
  for (auto& s : base.solutions) parts.push_back(std::move(s.partition));
  return consensus_from_solutions(parts, detectors, num_orderings, seed, options);
}

}  // namespace ecd
