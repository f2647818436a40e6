#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecd/community.hpp"
#include "ecd/detectors.hpp"
#include "ecd/graph.hpp"
#include "ecd/matrix.hpp"

namespace ecd {

enum class Matching { kJaccard, kAveragePrecision };
enum class Association { kSimple, kWeighted };

/// |a ∩ b| / |a ∪ b| for sorted vertex sets.
double match_jc(std::span<const VertexId> a, std::span<const VertexId> b);
/// (|a ∩ b| / |a| + |a ∩ b| / |b|) / 2 for sorted vertex sets.
double match_ap(std::span<const VertexId> a, std::span<const VertexId> b);

/// Multipartite graph whose vertices are the communities of the base
/// partitions. Only communities of different base partitions are joined, and
/// only when their matching score is positive.
struct MetaGraph {
  struct Node {
    std::uint32_t solution;   ///< index of the base partition
    CommunityId community;    ///< label inside that partition
  };

  std::vector<Node> nodes;
  std::vector<VertexSet> members;  ///< members[i] = vertices of meta-vertex i (sorted)
  Graph graph;
};

MetaGraph build_meta_graph(std::span<const Partition> bases, Matching matching = Matching::kJaccard);

/// Clusters the meta-graph; the result partitions the meta-vertices.
Partition meta_cluster(const MetaGraph& mg, const BaseDetector& reclusterer, std::uint64_t seed);

/// Fraction of the communities in `members` that contain v.
double assoc_simple(VertexId v, std::span<const VertexSet> members);
/// |∩| / |∪| over the communities in `members` that contain v; 0 when none does.
double assoc_weighted(VertexId v, std::span<const VertexSet> members);

/// |V| x L matrix of vertex to meta-community association scores, one column
/// per community of `meta` (in label order).
DenseMatrix association_matrix(std::size_t num_vertices, const MetaGraph& mg, const Partition& meta,
                               Association association = Association::kWeighted);

/// Column index chosen for every vertex: the row argmax; ties go to the tied
/// column holding most of the vertex's neighbors, then to the lowest column.
std::vector<CommunityId> argmax_assignment(const DenseMatrix& a, const Graph& g);

/// Disjoint structure from argmax_assignment (empty columns disappear).
Partition extract_disjoint(const DenseMatrix& a, const Graph& g);

/// P(C) = e^{AS^2} / (1 + e^{AS^2}) for mean internal-edge similarity AS.
double membership_probability(double mean_similarity);

/// Mean cosine similarity of association rows over the edges internal to
/// `community` (sorted); 0 when there is none.
double internal_similarity(const DenseMatrix& a, const Graph& g, std::span<const VertexId> community);

/// A community of the overlapping output together with its association column.
struct ColumnCommunity {
  CommunityId column;
  VertexSet members;  ///< sorted
};

/// Overlapping structure: starts from the argmax communities and, visiting
/// communities in descending P(C) (ties: larger, then lower column), adds
/// each neighboring vertex v for which P(C ∪ {v}) >= P(C). Candidates are
/// visited in descending association to C, then by id.
std::vector<ColumnCommunity> auto_threshold_communities(const DenseMatrix& a, const Graph& g);
Cover auto_threshold_cover(const DenseMatrix& a, const Graph& g);

/// Row-normalized association matrix; an all-zero row becomes uniform.
FuzzyAssignment extract_fuzzy(const DenseMatrix& a);

struct MedocOptions {
  Matching matching = Matching::kJaccard;
  Association association = Association::kWeighted;
  BaseDetector reclusterer = detector_by_name("louvain");
  std::size_t threads = 0;
};

struct MedocResult {
  MetaGraph meta_graph;
  Partition meta_communities;
  DenseMatrix association;
  Partition disjoint;
  Cover overlapping;
  FuzzyAssignment fuzzy;
};

MedocResult medoc_from_solutions(const Graph& g, std::span<const Partition> bases, std::uint64_t seed,
                                 const MedocOptions& options = {});

MedocResult medoc(const Graph& g, std::span<const BaseDetector> detectors, std::size_t num_orderings,
                  std::uint64_t seed, const MedocOptions& options = {});

}  // namespace ecd
