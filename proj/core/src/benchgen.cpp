#include "ecd/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "ecd/error.hpp"
#include "ecd/random.hpp"

namespace ecd {
namespace {

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

/// Continuous power law x^-tau on [lo, hi], sampled by inverse CDF.
double sample_power_law(Rng& rng, double tau, double lo, double hi) {
  const double u = uniform01(rng);
  if (std::abs(tau - 1.0) < 1e-12) return lo * std::pow(hi / lo, u);
  const double a = std::pow(lo, 1.0 - tau), b = std::pow(hi, 1.0 - tau);
  return std::pow(a + u * (b - a), 1.0 / (1.0 - tau));
}

double power_law_mean(double tau, double lo, double hi) {
  if (hi - lo < 1e-12) return lo;
  auto integral = [&](double power) {  // ∫ x^power dx on [lo, hi]
    if (std::abs(power + 1.0) < 1e-12) return std::log(hi / lo);
    return (std::pow(hi, power + 1.0) - std::pow(lo, power + 1.0)) / (power + 1.0);
  };
  return integral(1.0 - tau) / integral(-tau);
}

/// Lower cut-off making the power-law mean equal k_avg.
double solve_min_degree(const BenchConfig& cfg) {
  const double hi = static_cast<double>(cfg.k_max);
  double lo = 1.0, up = hi;
  if (power_law_mean(cfg.degree_exponent, lo, hi) > cfg.k_avg) {
    throw InvalidArgument("k_avg too small for k_max: the mean degree is at least " +
                          std::to_string(power_law_mean(cfg.degree_exponent, lo, hi)));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + up);
    (power_law_mean(cfg.degree_exponent, mid, hi) < cfg.k_avg ? lo : up) = mid;
  }
  return 0.5 * (lo + up);
}

std::uint64_t edge_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

/// Edge set under construction with O(1) membership and removal.
struct EdgeSet {
  std::unordered_set<std::uint64_t> keys;
  std::size_t attempts = 0;
  std::size_t budget_per_stub = 200;

  bool contains(VertexId u, VertexId v) const { return keys.count(edge_key(u, v)) > 0; }
};

/// Configuration-model pairing of `stubs`, restricted by `allowed`, with
/// rejection and degree-preserving swaps against edges made by this call.
/// Each call gets its own attempt budget, proportional to its stub count.
/// Returns the number of stubs left unwired.
template <typename Allowed>
std::size_t wire(std::vector<VertexId> stubs, Allowed allowed, EdgeSet& edges, Rng& rng) {
  std::vector<std::pair<VertexId, VertexId>> made;
  auto valid = [&](VertexId u, VertexId v) { return u != v && !edges.contains(u, v) && allowed(u, v); };
  auto add = [&](VertexId u, VertexId v) {
    edges.keys.insert(edge_key(u, v));
    made.emplace_back(u, v);
  };

  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<VertexId> pending;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    ++edges.attempts;
    if (valid(stubs[i], stubs[i + 1])) {
      add(stubs[i], stubs[i + 1]);
    } else {
      pending.push_back(stubs[i]);
      pending.push_back(stubs[i + 1]);
    }
  }
  std::size_t leftover = stubs.size() % 2;

  const std::size_t budget = edges.attempts + edges.budget_per_stub * stubs.size() + 10000;
  while (pending.size() >= 2 && edges.attempts < budget) {
    ++edges.attempts;
    std::uniform_int_distribution<std::size_t> any(0, pending.size() - 1);
    std::swap(pending[any(rng)], pending.back());
    std::swap(pending[std::uniform_int_distribution<std::size_t>(0, pending.size() - 2)(rng)],
              pending[pending.size() - 2]);
    const VertexId a = pending[pending.size() - 1], b = pending[pending.size() - 2];
    if (valid(a, b)) {
      add(a, b);
      pending.resize(pending.size() - 2);
      continue;
    }
    if (made.empty()) continue;
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, made.size() - 1)(rng);
    auto [x, y] = made[pick];
    if (uniform01(rng) < 0.5) std::swap(x, y);
    edges.keys.erase(edge_key(x, y));
    if (valid(a, x) && valid(b, y) && edge_key(a, x) != edge_key(b, y)) {
      made[pick] = made.back();
      made.pop_back();
      add(a, x);
      add(b, y);
      pending.resize(pending.size() - 2);
    } else {
      edges.keys.insert(edge_key(x, y));
    }
  }
  return leftover + pending.size();
}

struct PlantedAssignment {
  std::vector<VertexSet> communities;
  std::vector<std::vector<CommunityId>> memberships;
  std::vector<std::vector<std::size_t>> internal;  ///< internal degree per membership
  std::vector<std::size_t> external;
  std::size_t clamped = 0;
};

std::vector<std::size_t> sample_community_sizes(const BenchConfig& cfg, std::size_t slots, Rng& rng) {
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  while (total < slots) {
    auto s = static_cast<std::size_t>(std::llround(sample_power_law(
        rng, cfg.size_exponent, static_cast<double>(cfg.c_min), static_cast<double>(cfg.c_max))));
    s = std::clamp(s, cfg.c_min, cfg.c_max);
    sizes.push_back(s);
    total += s;
  }
  std::size_t excess = total - slots;
  if (excess > 0) {
    if (sizes.back() - excess >= cfg.c_min) {
      sizes.back() -= excess;
    } else {
      // Drop the last community and spread its remaining members over the others.
      std::size_t spill = sizes.back() - excess;
      sizes.pop_back();
      std::vector<std::size_t> room;
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < cfg.c_max) room.push_back(i);
      }
      while (spill > 0) {
        if (room.empty()) throw InvalidArgument("c_max too small: community sizes cannot absorb all vertices");
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, room.size() - 1)(rng);
        ++sizes[room[k]];
        --spill;
        if (sizes[room[k]] == cfg.c_max) {
          room[k] = room.back();
          room.pop_back();
        }
      }
    }
  }
  if (sizes.empty()) throw InvalidArgument("no communities generated");
  return sizes;
}

PlantedAssignment plant(const BenchConfig& cfg, const std::vector<std::size_t>& degree, Rng& rng) {
  const auto n = cfg.n;
  const auto overlapping = static_cast<std::size_t>(std::llround(cfg.overlap_fraction * static_cast<double>(n)));
  std::vector<std::size_t> count(n, 1);
  {
    std::vector<VertexId> ids(n);
    std::iota(ids.begin(), ids.end(), VertexId{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t i = 0; i < overlapping; ++i) count[ids[i]] = cfg.overlap_memberships;
  }
  const std::size_t slots = std::accumulate(count.begin(), count.end(), std::size_t{0});
  const auto sizes = sample_community_sizes(cfg, slots, rng);
  if (sizes.size() < cfg.overlap_memberships && overlapping > 0) {
    throw InvalidArgument("overlap_memberships exceeds the number of communities");
  }

  PlantedAssignment pa;
  pa.communities.resize(sizes.size());
  pa.memberships.resize(n);
  pa.internal.resize(n);
  pa.external.resize(n);

  struct Slot {
    VertexId v;
    std::size_t need;
  };
  std::vector<Slot> slot_list;
  for (VertexId v = 0; v < n; ++v) {
    const auto k_in = static_cast<std::size_t>(std::llround((1.0 - cfg.mu) * static_cast<double>(degree[v])));
    pa.external[v] = degree[v] - k_in;
    for (std::size_t j = 0; j < count[v]; ++j) {
      slot_list.push_back({v, k_in / count[v] + (j < k_in % count[v] ? 1 : 0)});
    }
  }
  std::shuffle(slot_list.begin(), slot_list.end(), rng);
  std::stable_sort(slot_list.begin(), slot_list.end(), [](const Slot& a, const Slot& b) { return a.need > b.need; });

  std::vector<std::size_t> capacity = sizes;
  auto member_of = [&](VertexId v, std::size_t c) {
    const auto& m = pa.memberships[v];
    return std::find(m.begin(), m.end(), static_cast<CommunityId>(c)) != m.end();
  };
  auto place = [&](VertexId v, std::size_t c, std::size_t need) {
    pa.communities[c].push_back(v);
    pa.memberships[v].push_back(static_cast<CommunityId>(c));
    if (need + 1 > sizes[c]) {
      need = sizes[c] - 1;
      ++pa.clamped;
    }
    pa.internal[v].push_back(need);
    --capacity[c];
  };

  for (const auto& s : slot_list) {
    // Capacity-weighted choice among communities large enough for this slot.
    std::vector<std::size_t> fit;
    std::size_t weight = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (capacity[c] > 0 && sizes[c] >= s.need + 1 && !member_of(s.v, c)) {
        fit.push_back(c);
        weight += capacity[c];
      }
    }
    if (!fit.empty()) {
      std::size_t r = std::uniform_int_distribution<std::size_t>(0, weight - 1)(rng);
      for (auto c : fit) {
        if (r < capacity[c]) {
          place(s.v, c, s.need);
          break;
        }
        r -= capacity[c];
      }
      continue;
    }
    // Nothing large enough: take the largest community with room.
    std::size_t best = sizes.size();
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (capacity[c] > 0 && !member_of(s.v, c) && (best == sizes.size() || sizes[c] > sizes[best])) best = c;
    }
    if (best != sizes.size()) {
      place(s.v, best, s.need);
      continue;
    }
    // The only free seats are in communities v already belongs to: swap v
    // into another community in exchange for one of its members.
    std::size_t open = sizes.size();
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (capacity[c] > 0) open = c;
    }
    bool swapped = false;
    for (std::size_t c = 0; c < sizes.size() && !swapped; ++c) {
      if (member_of(s.v, c)) continue;
      for (std::size_t i = 0; i < pa.communities[c].size() && !swapped; ++i) {
        const VertexId u = pa.communities[c][i];
        if (member_of(u, open)) continue;
        auto& mu = pa.memberships[u];
        const auto pos = static_cast<std::size_t>(std::find(mu.begin(), mu.end(), static_cast<CommunityId>(c)) - mu.begin());
        const std::size_t u_need = pa.internal[u][pos];
        pa.communities[c][i] = s.v;
        pa.memberships[s.v].push_back(static_cast<CommunityId>(c));
        pa.internal[s.v].push_back(std::min(s.need, sizes[c] - 1));
        mu[pos] = static_cast<CommunityId>(open);
        pa.communities[open].push_back(u);
        pa.internal[u][pos] = std::min(u_need, sizes[open] - 1);
        --capacity[open];
        swapped = true;
      }
    }
    if (!swapped) throw InvalidArgument("cannot place overlapping memberships: too few communities");
  }
  return pa;
}

std::vector<std::size_t> sample_degrees(const BenchConfig& cfg, Rng& rng) {
  const double k_min = solve_min_degree(cfg);
  std::vector<std::size_t> degree(cfg.n);
  for (auto& d : degree) {
    const double x = sample_power_law(rng, cfg.degree_exponent, k_min, static_cast<double>(cfg.k_max));
    d = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(x)), 1, cfg.k_max);
  }
  return degree;
}

struct Wired {
  Graph graph;
  PlantedAssignment assignment;
  BenchStats stats;
};

Wired generate_crisp(const BenchConfig& cfg) {
  cfg.validate();
  Rng rng(mix64(cfg.seed));
  const auto degree = sample_degrees(cfg, rng);
  auto pa = plant(cfg, degree, rng);

  EdgeSet edges;
  std::size_t dropped = 0;

  for (std::size_t c = 0; c < pa.communities.size(); ++c) {
    std::vector<VertexId> stubs;
    for (VertexId v : pa.communities[c]) {
      const auto& m = pa.memberships[v];
      const auto pos = static_cast<std::size_t>(std::find(m.begin(), m.end(), static_cast<CommunityId>(c)) - m.begin());
      stubs.insert(stubs.end(), pa.internal[v][pos], v);
    }
    dropped += wire(std::move(stubs), [](VertexId, VertexId) { return true; }, edges, rng);
  }

  std::vector<VertexId> external;
  for (VertexId v = 0; v < cfg.n; ++v) external.insert(external.end(), pa.external[v], v);
  auto disjoint_memberships = [&](VertexId u, VertexId v) {
    for (auto a : pa.memberships[u]) {
      for (auto b : pa.memberships[v]) {
        if (a == b) return false;
      }
    }
    return true;
  };
  dropped += wire(std::move(external), disjoint_memberships, edges, rng);

  GraphBuilder b(cfg.n);
  std::vector<std::uint64_t> keys(edges.keys.begin(), edges.keys.end());
  std::sort(keys.begin(), keys.end());
  for (auto k : keys) b.add_edge(static_cast<VertexId>(k >> 32), static_cast<VertexId>(k & 0xffffffffu));

  Wired w{b.build(), std::move(pa), {}};
  w.stats.edges = w.graph.num_edges();
  w.stats.mean_degree = 2.0 * static_cast<double>(w.stats.edges) / static_cast<double>(cfg.n);
  w.stats.dropped_stubs = dropped;
  w.stats.clamped_vertices = w.assignment.clamped;
  return w;
}

}  // namespace

void BenchConfig::validate() const {
  if (n < 2) throw InvalidArgument("n must be at least 2");
  if (!(mu > 0.0 && mu < 1.0)) throw InvalidArgument("mu must lie in (0, 1)");
  if (c_min < 2 || c_min > c_max) throw InvalidArgument("need 2 <= c_min <= c_max");
  if (c_max > n) throw InvalidArgument("c_max must not exceed n");
  if (k_max < 1 || k_max >= n) throw InvalidArgument("k_max must lie in [1, n)");
  if (!(k_avg >= 1.0 && k_avg <= static_cast<double>(k_max))) throw InvalidArgument("k_avg must lie in [1, k_max]");
  if (!(overlap_fraction >= 0.0 && overlap_fraction <= 1.0)) throw InvalidArgument("overlap_fraction must lie in [0, 1]");
  if (overlap_memberships < 1) throw InvalidArgument("overlap_memberships must be at least 1");
  if (degree_exponent <= 0.0 || size_exponent <= 0.0) throw InvalidArgument("power-law exponents must be positive");
}

BenchConfig large_bench_config() {
  BenchConfig cfg;
  cfg.n = 10000;
  cfg.k_avg = 50.0;
  cfg.k_max = 150;
  cfg.mu = 0.3;
  cfg.c_min = 20;
  cfg.c_max = 100;
  return cfg;
}

double realized_mixing(const Graph& g, const Cover& truth) {
  if (g.num_edges() == 0) return 0.0;
  const auto mem = truth.memberships();
  std::size_t crossing = 0;
  for (const auto& e : g.edges()) {
    const auto& a = mem[e.u];
    const auto& b = mem[e.v];
    std::vector<CommunityId> shared;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    if (shared.empty()) ++crossing;
  }
  return static_cast<double>(crossing) / static_cast<double>(g.num_edges());
}

Benchmark<Partition> gen_disjoint(const BenchConfig& cfg) {
  BenchConfig c = cfg;
  c.overlap_fraction = 0.0;
  auto w = generate_crisp(c);
  Benchmark<Partition> out{std::move(w.graph), Partition::from_communities(c.n, w.assignment.communities), w.stats};
  out.stats.mixing = realized_mixing(out.graph, Cover::from_partition(out.truth));
  return out;
}

Benchmark<Cover> gen_overlapping(const BenchConfig& cfg) {
  auto w = generate_crisp(cfg);
  Benchmark<Cover> out{std::move(w.graph), Cover(cfg.n, std::move(w.assignment.communities)), w.stats};
  out.stats.mixing = realized_mixing(out.graph, out.truth);
  return out;
}

Benchmark<FuzzyAssignment> gen_fuzzy(const BenchConfig& cfg) {
  cfg.validate();
  Rng rng(mix64(derive_seed(cfg.seed, {0xf2})));
  const auto n = cfg.n;
  const auto degree = sample_degrees(cfg, rng);
  const auto pa = plant(cfg, degree, rng);
  const auto num_comms = pa.communities.size();

  // Membership weights: uniform draws normalized per vertex.
  std::vector<FuzzyAssignment::Row> rows(n);
  for (VertexId v = 0; v < n; ++v) {
    double sum = 0.0;
    for (auto c : pa.memberships[v]) {
      const double w = uniform01(rng) + 1e-12;
      rows[v].emplace_back(c, w);
      sum += w;
    }
    for (auto& [c, w] : rows[v]) w /= sum;
    std::sort(rows[v].begin(), rows[v].end());
  }

  auto co_membership = [&](VertexId i, VertexId j) {
    double s = 0.0;
    auto a = rows[i].begin(), b = rows[j].begin();
    while (a != rows[i].end() && b != rows[j].end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        s += std::min(a->second, b->second);
        ++a;
        ++b;
      }
    }
    return s;
  };

  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  double s1 = 0.0, s2 = 0.0;
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      const double s = co_membership(i, j);
      s1 += s;
      s2 += s * s;
    }
  }
  const double target = 0.5 * static_cast<double>(n) * cfg.k_avg;
  // p1 * s1 + p0 * (pairs - s1) = target
  // p1 * s2 + p0 * (s1 - s2)    = (1 - mu) * target
  const double det = s1 * (s1 - s2) - (pairs - s1) * s2;
  if (std::abs(det) < 1e-9) throw InvalidArgument("fuzzy benchmark: degenerate co-membership moments");
  const double p1 = (target * (s1 - s2) - (pairs - s1) * (1.0 - cfg.mu) * target) / det;
  const double p0 = (s1 * (1.0 - cfg.mu) * target - s2 * target) / det;
  if (!(p1 >= 0.0 && p1 <= 1.0 && p0 >= 0.0 && p0 <= 1.0)) {
    throw InvalidArgument("fuzzy benchmark: no edge probabilities in [0,1] match k_avg and mu (p1=" +
                          std::to_string(p1) + ", p0=" + std::to_string(p0) + ")");
  }

  GraphBuilder b(n);
  double intra_mass = 0.0;
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      const double s = co_membership(i, j);
      if (uniform01(rng) < s * p1 + (1.0 - s) * p0) {
        b.add_edge(i, j);
        intra_mass += s;
      }
    }
  }

  Benchmark<FuzzyAssignment> out{b.build(), FuzzyAssignment(num_comms, std::move(rows)), {}};
  out.stats.edges = out.graph.num_edges();
  out.stats.mean_degree = 2.0 * static_cast<double>(out.stats.edges) / static_cast<double>(n);
  out.stats.mixing = out.stats.edges == 0 ? 0.0 : 1.0 - intra_mass / static_cast<double>(out.stats.edges);
  out.stats.clamped_vertices = pa.clamped;
  out.stats.p1 = p1;
  out.stats.p0 = p0;
  out.stats.expected_edges = target;
  return out;
}

}  // namespace ecd
