#include "ecd/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ecd/error.hpp"
#include "ecd/random.hpp"

namespace ecd {

bool Graph::has_edge(VertexId u, VertexId v) const noexcept {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<double> Graph::edge_weight(VertexId u, VertexId v) const noexcept {
  if (u >= num_vertices() || v >= num_vertices()) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return neighbor_weights(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::string Graph::name(VertexId v) const {
  return names_.empty() ? std::to_string(v) : names_[v];
}

bool GraphBuilder::add_edge(VertexId u, VertexId v, double weight) {
  if (u >= n_ || v >= n_) {
    throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") out of range for n=" + std::to_string(n_));
  }
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw InvalidArgument("edge weight must be a finite non-negative number");
  }
  if (u == v) {
    ++self_loops_;
    return false;
  }
  if (u > v) std::swap(u, v);
  const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
  if (!seen_.insert(key).second) {
    ++duplicates_;
    return false;
  }
  edges_.push_back({u, v, weight});
  return true;
}

Graph GraphBuilder::build(std::vector<std::string> names) const {
  if (!names.empty() && names.size() != n_) {
    throw InvalidArgument("symbol table size does not match vertex count");
  }
  Graph g;
  g.edges_ = edges_;
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];

  std::vector<std::pair<VertexId, double>> adj(g.offsets_[n_]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    adj[cursor[e.u]++] = {e.v, e.weight};
    adj[cursor[e.v]++] = {e.u, e.weight};
  }
  g.targets_.resize(adj.size());
  g.weights_.resize(adj.size());
  g.strength_.assign(n_, 0.0);
  for (std::size_t v = 0; v < n_; ++v) {
    auto first = adj.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = adj.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    for (auto i = g.offsets_[v]; i < g.offsets_[v + 1]; ++i) {
      g.targets_[i] = adj[i].first;
      g.weights_[i] = adj[i].second;
      g.strength_[v] += adj[i].second;
    }
  }
  for (const auto& e : g.edges_) {
    g.total_weight_ += e.weight;
    if (e.weight != 1.0) g.weighted_ = true;
  }
  g.names_ = std::move(names);
  return g;
}

Graph make_graph(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  GraphBuilder b(n);
  for (auto [u, v] : pairs) b.add_edge(u, v);
  return b.build();
}

std::vector<std::uint32_t> VertexOrdering::ranks() const {
  std::vector<std::uint32_t> r(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) r[perm[i]] = static_cast<std::uint32_t>(i);
  return r;
}

VertexOrdering random_ordering(std::size_t n, std::uint64_t seed) {
  VertexOrdering o{std::vector<VertexId>(n), seed};
  std::iota(o.perm.begin(), o.perm.end(), VertexId{0});
  Rng rng(mix64(seed));
  // Explicit Fisher-Yates: std::shuffle's draw sequence is library-specific.
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(o.perm[i - 1], o.perm[j]);
  }
  return o;
}

VertexOrdering identity_ordering(std::size_t n) {
  VertexOrdering o{std::vector<VertexId>(n), 0};
  std::iota(o.perm.begin(), o.perm.end(), VertexId{0});
  return o;
}

std::vector<HopDistance> bfs_distances(const Graph& g, VertexId source) {
  const auto n = g.num_vertices();
  if (source >= n) throw InvalidArgument("bfs source out of range");
  std::vector<HopDistance> dist(n);
  std::vector<VertexId> frontier{source};
  dist[source] = 0;
  std::size_t head = 0;
  while (head < frontier.size()) {
    const VertexId u = frontier[head++];
    const std::uint32_t du = *dist[u];
    for (VertexId w : g.neighbors(u)) {
      if (!dist[w]) {
        dist[w] = du + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

Subgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  if (vertices.empty()) throw InvalidArgument("induced_subgraph: empty vertex set");
  Subgraph sub;
  sub.to_parent.assign(vertices.begin(), vertices.end());
  std::sort(sub.to_parent.begin(), sub.to_parent.end());
  sub.to_parent.erase(std::unique(sub.to_parent.begin(), sub.to_parent.end()), sub.to_parent.end());
  if (sub.to_parent.back() >= g.num_vertices()) {
    throw InvalidArgument("induced_subgraph: vertex out of range");
  }
  constexpr auto kAbsent = static_cast<VertexId>(-1);
  std::vector<VertexId> local(g.num_vertices(), kAbsent);
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) {
    local[sub.to_parent[i]] = static_cast<VertexId>(i);
  }
  GraphBuilder b(sub.to_parent.size());
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) {
    const VertexId u = sub.to_parent[i];
    auto nb = g.neighbors(u);
    auto wt = g.neighbor_weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] > u && local[nb[k]] != kAbsent) b.add_edge(static_cast<VertexId>(i), local[nb[k]], wt[k]);
    }
  }
  std::vector<std::string> names;
  if (g.has_names()) {
    names.reserve(sub.to_parent.size());
    for (VertexId v : sub.to_parent) names.push_back(g.names()[v]);
  }
  sub.graph = b.build(std::move(names));
  return sub;
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
  const auto n = g.num_vertices();
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> comp(n, kUnset);
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(u)) {
        if (comp[w] == kUnset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace ecd
