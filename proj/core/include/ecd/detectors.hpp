#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ecd/community.hpp"
#include "ecd/graph.hpp"

namespace ecd {

/// A disjoint community detector. `detect` must be deterministic in
/// (graph, ordering, seed); `ordering` is the order in which the detector
/// sweeps or processes vertices, `seed` drives tie-breaking.
struct BaseDetector {
  using DetectFn = std::function<Partition(const Graph&, const VertexOrdering&, std::uint64_t seed)>;

  std::string name;
  DetectFn detect;
};

/// Newman modularity, weighted when the graph carries weights:
///   Q = sum_c [ W_c / W - (S_c / 2W)^2 ]
/// with W_c the internal weight of c, S_c its total strength and W the total
/// edge weight. Throws InvalidArgument on a graph with no edge weight.
double modularity(const Graph& g, const Partition& p);

/// Multi-level greedy modularity optimization (Blondel et al.).
Partition louvain(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed);

struct LabelPropagationResult {
  Partition partition;
  std::size_t sweeps = 0;
  /// False when the sweep cap was hit before a fixpoint.
  bool converged = false;
};

inline constexpr std::size_t kLabelPropagationMaxSweeps = 100;

/// Asynchronous label propagation. A vertex keeps its label when that label
/// is among the heaviest neighbor labels; other ties are broken at random.
LabelPropagationResult label_propagation_run(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed,
                                             std::size_t max_sweeps = kLabelPropagationMaxSweeps);
Partition label_propagation(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed);

/// Clauset-Newman-Moore greedy agglomeration; returns the partition at the
/// modularity peak of the merge sequence.
Partition greedy_cnm(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed);

inline constexpr unsigned kWalktrapDefaultLength = 4;

/// Walktrap (Pons & Latapy): Ward agglomeration of adjacent communities under
/// the t-step random-walk distance, cut at peak modularity.
Partition walktrap(const Graph& g, const VertexOrdering& ordering, std::uint64_t seed,
                   unsigned walk_length = kWalktrapDefaultLength);

/// Row v of P^t for the lazy walk used by walktrap (each vertex carries a
/// self-loop weighted by its mean incident weight). Sums to 1.
std::vector<double> walk_profile(const Graph& g, VertexId v, unsigned walk_length);

/// Detector names accepted by detector_by_name: louvain, lpa, cnm, walktrap.
std::vector<std::string> detector_names();
BaseDetector detector_by_name(const std::string& name, unsigned walk_length = kWalktrapDefaultLength);
/// The four built-in detectors in a fixed order.
std::vector<BaseDetector> default_detectors();
/// A detector that ignores its inputs and returns a precomputed partition;
/// this is how externally computed solutions (e.g. Infomap) join an ensemble.
BaseDetector fixed_detector(std::string name, Partition partition);

}  // namespace ecd
