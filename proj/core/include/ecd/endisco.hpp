#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecd/community.hpp"
#include "ecd/detectors.hpp"
#include "ecd/graph.hpp"
#include "ecd/matrix.hpp"

namespace ecd {

enum class Involvement { kRcc, kIdc };
enum class Similarity { kCosine, kChebyshev };

/// RCC involvement: the inverse of the mean hop distance from v to the other
/// members of C. 0 when some member is unreachable, 1 for C = {v}.
double involvement_rcc(const Graph& g, VertexId v, std::span<const VertexId> community);

/// Member of C with the highest closeness centrality inside the subgraph
/// induced by C (Wasserman-Faust closeness when that subgraph is
/// disconnected). Ties go to the lowest vertex id.
VertexId community_centroid(const Graph& g, std::span<const VertexId> community);

/// Inverse hop distance from v to the centroid of C; 1 when v is the
/// centroid, 0 when the centroid is unreachable.
double involvement_idc(const Graph& g, VertexId v, std::span<const VertexId> community);

/// Distance d_v^C = 1 - INV(v, C) from every vertex to every community of
/// every base partition. Rows are vertices; columns enumerate communities of
/// bases[0], then bases[1], and so on.
DenseMatrix feature_distances(const Graph& g, std::span<const Partition> bases, Involvement inv,
                              std::size_t threads = 0);

/// Add-one smoothed posterior over communities for one vertex:
///   P(C_i | v) = (D_v - F_i + 1) / (Clu * D_v + Clu - sum_k F_k),  D_v = max_k F_k.
std::vector<double> posterior(std::span<const double> distances);
/// Row-wise posterior of a feature-distance matrix.
DenseMatrix posterior_matrix(const DenseMatrix& distances);

/// Pairwise similarity of posterior rows: cosine, or 1 - Chebyshev distance.
DenseMatrix build_ensemble_matrix(const DenseMatrix& posteriors, Similarity sim, std::size_t threads = 0);

/// Weighted graph for re-clustering: (u,v) is kept when it is an edge of g
/// or when v is among the ceil(mean degree of g) most similar vertices to u
/// (or vice versa). Edge weights are the similarities.
Graph sparsify_ensemble_matrix(const Graph& g, const DenseMatrix& ensemble);

struct EndiscoOptions {
  Involvement involvement = Involvement::kRcc;
  Similarity similarity = Similarity::kCosine;
  /// Re-clustering algorithm run on the sparsified ensemble graph.
  BaseDetector reclusterer = detector_by_name("louvain");
  std::size_t threads = 0;
};

/// Re-clusters a set of base partitions of g.
Partition endisco_from_solutions(const Graph& g, std::span<const Partition> bases, std::uint64_t seed,
                                 const EndiscoOptions& options = {});

/// Full pipeline: K orderings of every detector, then endisco_from_solutions.
Partition endisco(const Graph& g, std::span<const BaseDetector> detectors, std::size_t num_orderings,
                  std::uint64_t seed, const EndiscoOptions& options = {});

}  // namespace ecd
