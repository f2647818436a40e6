#include "ecd/community.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "ecd/error.hpp"

namespace ecd {

Partition::Partition(std::vector<CommunityId> labels) : labels_(std::move(labels)) {
  std::unordered_map<CommunityId, CommunityId> remap;
  remap.reserve(labels_.size());
  for (auto& l : labels_) {
    auto [it, inserted] = remap.try_emplace(l, static_cast<CommunityId>(remap.size()));
    l = it->second;
  }
  num_communities_ = remap.size();
}

Partition Partition::from_communities(std::size_t n, const std::vector<VertexSet>& communities) {
  constexpr auto kUnset = static_cast<CommunityId>(-1);
  std::vector<CommunityId> labels(n, kUnset);
  CommunityId c = 0;
  for (const auto& members : communities) {
    if (members.empty()) continue;
    for (VertexId v : members) {
      if (v >= n) throw InvalidArgument("community member " + std::to_string(v) + " out of range");
      if (labels[v] != kUnset) {
        throw InvalidArgument("vertex " + std::to_string(v) + " appears in more than one community");
      }
      labels[v] = c;
    }
    ++c;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (labels[v] == kUnset) throw InvalidArgument("vertex " + std::to_string(v) + " has no community");
  }
  return Partition(std::move(labels));
}

Partition Partition::singletons(std::size_t n) {
  std::vector<CommunityId> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = static_cast<CommunityId>(v);
  return Partition(std::move(labels));
}

Partition Partition::whole(std::size_t n) { return Partition(std::vector<CommunityId>(n, 0)); }

std::vector<VertexSet> Partition::communities() const {
  std::vector<VertexSet> out(num_communities_);
  for (std::size_t v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(static_cast<VertexId>(v));
  return out;
}

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> out(num_communities_, 0);
  for (auto l : labels_) ++out[l];
  return out;
}

Cover::Cover(std::size_t n, std::vector<VertexSet> communities) : n_(n) {
  std::vector<bool> covered(n, false);
  for (auto& members : communities) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) continue;
    if (members.back() >= n) {
      throw InvalidArgument("community member " + std::to_string(members.back()) + " out of range");
    }
    for (VertexId v : members) covered[v] = true;
    communities_.push_back(std::move(members));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!covered[v]) throw InvalidArgument("vertex " + std::to_string(v) + " has no community");
  }
}

Cover Cover::from_partition(const Partition& p) { return Cover(p.num_vertices(), p.communities()); }

std::vector<std::vector<CommunityId>> Cover::memberships() const {
  std::vector<std::vector<CommunityId>> out(n_);
  for (std::size_t c = 0; c < communities_.size(); ++c) {
    for (VertexId v : communities_[c]) out[v].push_back(static_cast<CommunityId>(c));
  }
  return out;
}

bool Cover::is_partition() const {
  std::size_t total = 0;
  for (const auto& c : communities_) total += c.size();
  return total == n_;
}

FuzzyAssignment::FuzzyAssignment(std::size_t num_communities, std::vector<Row> rows)
    : num_communities_(num_communities), rows_(std::move(rows)) {
  for (std::size_t v = 0; v < rows_.size(); ++v) {
    auto& row = rows_[v];
    std::erase_if(row, [](const auto& e) { return e.second == 0.0; });
    std::sort(row.begin(), row.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto [c, p] = row[i];
      if (c >= num_communities_) throw InvalidArgument("fuzzy community id out of range");
      if (i > 0 && row[i - 1].first == c) {
        throw InvalidArgument("vertex " + std::to_string(v) + " lists community " + std::to_string(c) + " twice");
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("fuzzy membership outside [0,1] for vertex " + std::to_string(v));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw InvalidArgument("fuzzy memberships of vertex " + std::to_string(v) + " sum to " + std::to_string(sum));
    }
  }
}

FuzzyAssignment FuzzyAssignment::from_partition(const Partition& p) {
  std::vector<Row> rows(p.num_vertices());
  for (std::size_t v = 0; v < rows.size(); ++v) rows[v] = {{p.label(static_cast<VertexId>(v)), 1.0}};
  return FuzzyAssignment(p.num_communities(), std::move(rows));
}

double FuzzyAssignment::prob(VertexId v, CommunityId c) const noexcept {
  const auto& row = rows_[v];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, CommunityId x) { return e.first < x; });
  return (it != row.end() && it->first == c) ? it->second : 0.0;
}

std::vector<double> FuzzyAssignment::dense() const {
  std::vector<double> out(rows_.size() * num_communities_, 0.0);
  for (std::size_t v = 0; v < rows_.size(); ++v) {
    for (auto [c, p] : rows_[v]) out[v * num_communities_ + c] = p;
  }
  return out;
}

}  // namespace ecd
