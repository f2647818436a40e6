#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ecd/graph.hpp"

namespace ecd {

using CommunityId = std::uint32_t;
using VertexSet = std::vector<VertexId>;

/// Disjoint community structure: every vertex carries exactly one label.
/// Labels are normalized to 0..c-1 in order of first appearance, so two
/// partitions that differ only by a relabeling compare equal.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<CommunityId> labels);

  /// Builds from explicit vertex sets; they must be pairwise disjoint and cover 0..n-1.
  static Partition from_communities(std::size_t n, const std::vector<VertexSet>& communities);
  static Partition singletons(std::size_t n);
  static Partition whole(std::size_t n);

  std::size_t num_vertices() const noexcept { return labels_.size(); }
  std::size_t num_communities() const noexcept { return num_communities_; }
  CommunityId label(VertexId v) const noexcept { return labels_[v]; }
  const std::vector<CommunityId>& labels() const noexcept { return labels_; }

  /// Member lists indexed by label, each sorted ascending.
  std::vector<VertexSet> communities() const;
  std::vector<std::size_t> sizes() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<CommunityId> labels_;
  std::size_t num_communities_ = 0;
};

/// Overlapping (crisp) community structure; every vertex belongs to at least
/// one community. Communities are stored sorted and non-empty.
class Cover {
 public:
  Cover() = default;
  Cover(std::size_t n, std::vector<VertexSet> communities);

  static Cover from_partition(const Partition& p);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_communities() const noexcept { return communities_.size(); }
  const std::vector<VertexSet>& communities() const noexcept { return communities_; }
  /// Per-vertex sorted list of community ids.
  std::vector<std::vector<CommunityId>> memberships() const;
  /// True when no vertex has more than one membership.
  bool is_partition() const;

 private:
  std::size_t n_ = 0;
  std::vector<VertexSet> communities_;
};

/// Per-vertex probability distribution over communities, stored sparsely.
/// Each row's probabilities lie in [0,1] and sum to 1 within 1e-9.
class FuzzyAssignment {
 public:
  using Row = std::vector<std::pair<CommunityId, double>>;

  static constexpr double kRowTolerance = 1e-9;

  FuzzyAssignment() = default;
  /// Rows are validated; zero entries are dropped, entries are sorted by community.
  FuzzyAssignment(std::size_t num_communities, std::vector<Row> rows);

  static FuzzyAssignment from_partition(const Partition& p);

  std::size_t num_vertices() const noexcept { return rows_.size(); }
  std::size_t num_communities() const noexcept { return num_communities_; }
  const Row& row(VertexId v) const noexcept { return rows_[v]; }
  double prob(VertexId v, CommunityId c) const noexcept;
  /// Dense |V| x L matrix, row-major.
  std::vector<double> dense() const;

 private:
  std::size_t num_communities_ = 0;
  std::vector<Row> rows_;
};

}  // namespace ecd
