#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ecd {

using VertexId = std::uint32_t;

struct Edge {
  VertexId u;
  VertexId v;
  double weight = 1.0;
};

/// Undirected simple graph in CSR form. Vertex ids are dense (0..n-1),
/// adjacency lists are sorted and symmetric, there are no self-loops and no
/// parallel edges. Immutable once built; use GraphBuilder to construct.
///
/// An optional symbol table maps dense ids back to the external vertex names
/// found in input files.
class Graph {
 public:
  Graph() = default;

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const double> neighbor_weights(VertexId v) const noexcept {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  double weighted_degree(VertexId v) const noexcept { return strength_[v]; }
  /// Sum of edge weights (each undirected edge counted once).
  double total_weight() const noexcept { return total_weight_; }
  bool is_weighted() const noexcept { return weighted_; }

  /// Canonical edge list, u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(VertexId u, VertexId v) const noexcept;
  /// Weight of edge (u,v), or nullopt when absent.
  std::optional<double> edge_weight(VertexId u, VertexId v) const noexcept;

  bool has_names() const noexcept { return !names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  /// External name of v; the decimal id when the graph carries no symbol table.
  std::string name(VertexId v) const;

 private:
  friend class GraphBuilder;

  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<double> weights_;
  std::vector<double> strength_;
  std::vector<Edge> edges_;
  std::vector<std::string> names_;
  double total_weight_ = 0.0;
  bool weighted_ = false;
};

/// Accumulates edges, silently dropping self-loops and duplicates (the first
/// occurrence of an undirected pair wins) while counting both.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : n_(n) {}

  /// Returns false when the edge was dropped (self-loop or duplicate).
  bool add_edge(VertexId u, VertexId v, double weight = 1.0);

  std::size_t self_loops_dropped() const noexcept { return self_loops_; }
  std::size_t duplicates_dropped() const noexcept { return duplicates_; }
  std::size_t num_vertices() const noexcept { return n_; }

  Graph build(std::vector<std::string> names = {}) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::size_t self_loops_ = 0;
  std::size_t duplicates_ = 0;
  std::unordered_set<std::uint64_t> seen_;
};

/// Convenience for tests and generators: builds an unweighted graph from pairs.
Graph make_graph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& pairs);

/// A permutation of 0..n-1 giving the order in which a detector sweeps vertices.
struct VertexOrdering {
  std::vector<VertexId> perm;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return perm.size(); }
  /// rank[v] = position of v in perm.
  std::vector<std::uint32_t> ranks() const;
};

/// Uniformly random permutation, deterministic in (n, seed).
VertexOrdering random_ordering(std::size_t n, std::uint64_t seed);
/// The identity permutation.
VertexOrdering identity_ordering(std::size_t n);

/// Unweighted hop distance; nullopt marks an unreachable vertex.
using HopDistance = std::optional<std::uint32_t>;

std::vector<HopDistance> bfs_distances(const Graph& g, VertexId source);

struct Subgraph {
  Graph graph;
  /// to_parent[i] is the id in the original graph of subgraph vertex i.
  std::vector<VertexId> to_parent;
};

/// Subgraph induced by `vertices` (duplicates ignored). Vertex i of the result
/// corresponds to the i-th distinct vertex of the sorted input. Edge weights
/// are preserved.
Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

/// Connected component label per vertex (labels 0..c-1 in order of first vertex).
std::vector<std::uint32_t> connected_components(const Graph& g);

}  // namespace ecd
