#include "ecd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ecd/error.hpp"

namespace ecd {
namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": inputs cover different vertex counts");
  if (a == 0) throw InvalidArgument(std::string(what) + ": empty inputs");
}

/// -p log p with p = count / n.
double plogp(double count, double n) {
  if (count <= 0.0) return 0.0;
  const double p = count / n;
  return -p * std::log(p);
}

double entropy(const std::vector<std::size_t>& sizes, std::size_t n) {
  double h = 0.0;
  for (auto s : sizes) h += plogp(static_cast<double>(s), static_cast<double>(n));
  return h;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

std::vector<VertexSet> canonical(const Cover& c) {
  auto comms = c.communities();
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return comms;
}

}  // namespace

ContingencyTable contingency(const Partition& a, const Partition& b) {
  require_same_size(a.num_vertices(), b.num_vertices(), "contingency");
  ContingencyTable t;
  t.total = a.num_vertices();
  t.row_sums = a.sizes();
  t.col_sums = b.sizes();
  std::vector<std::uint64_t> keys(t.total);
  for (std::size_t v = 0; v < t.total; ++v) {
    keys[v] = (static_cast<std::uint64_t>(a.label(static_cast<VertexId>(v))) << 32) | b.label(static_cast<VertexId>(v));
  }
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    t.cells.push_back({static_cast<CommunityId>(keys[i] >> 32), static_cast<CommunityId>(keys[i] & 0xffffffffu), j - i});
    i = j;
  }
  return t;
}

double nmi(const Partition& a, const Partition& b) {
  require_same_size(a.num_vertices(), b.num_vertices(), "nmi");
  if (a == b) return 1.0;
  const auto t = contingency(a, b);
  const double n = static_cast<double>(t.total);
  const double ha = entropy(t.row_sums, t.total);
  const double hb = entropy(t.col_sums, t.total);
  if (ha + hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& c : t.cells) {
    const double nij = static_cast<double>(c.count);
    mi += nij / n * std::log(nij * n / (static_cast<double>(t.row_sums[c.row]) * static_cast<double>(t.col_sums[c.col])));
  }
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

double ari(const Partition& a, const Partition& b) {
  require_same_size(a.num_vertices(), b.num_vertices(), "ari");
  const auto t = contingency(a, b);
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& c : t.cells) index += choose2(static_cast<double>(c.count));
  for (auto s : t.row_sums) sum_a += choose2(static_cast<double>(s));
  for (auto s : t.col_sums) sum_b += choose2(static_cast<double>(s));
  const double pairs = choose2(static_cast<double>(t.total));
  if (pairs == 0.0) return 1.0;
  const double expected = sum_a * sum_b / pairs;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return index == max_index ? 1.0 : 0.0;
  return (index - expected) / (max_index - expected);
}

double onmi(const Cover& a, const Cover& b) {
  require_same_size(a.num_vertices(), b.num_vertices(), "onmi");
  const auto ca = canonical(a);
  const auto cb = canonical(b);
  if (ca == cb) return 1.0;

  const double n = static_cast<double>(a.num_vertices());
  const std::size_t ka = ca.size(), kb = cb.size();

  std::vector<double> overlap(ka * kb, 0.0);
  {
    std::vector<std::vector<CommunityId>> mem_b(a.num_vertices());
    for (std::size_t l = 0; l < kb; ++l) {
      for (VertexId v : cb[l]) mem_b[v].push_back(static_cast<CommunityId>(l));
    }
    for (std::size_t k = 0; k < ka; ++k) {
      for (VertexId v : ca[k]) {
        for (auto l : mem_b[v]) overlap[k * kb + l] += 1.0;
      }
    }
  }

  auto h_binary = [&](double size) { return plogp(size, n) + plogp(n - size, n); };

  // H(X_k | Y) = min over admissible Y_l of H(X_k | Y_l), or H(X_k) when none is admissible.
  auto conditional = [&](const std::vector<VertexSet>& x, const std::vector<VertexSet>& y, bool x_is_a) {
    std::vector<double> parts;
    parts.reserve(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double sx = static_cast<double>(x[k].size());
      double best = h_binary(sx);
      for (std::size_t l = 0; l < y.size(); ++l) {
        const double sy = static_cast<double>(y[l].size());
        const double d = x_is_a ? overlap[k * kb + l] : overlap[l * kb + k];
        const double c = sx - d;  // in X_k only
        const double bb = sy - d; // in Y_l only
        const double aa = n - sx - sy + d;
        const double ha = plogp(aa, n), hb = plogp(bb, n), hc = plogp(c, n), hd = plogp(d, n);
        if (ha + hd < hb + hc) continue;
        const double h = (ha - plogp(aa + c, n)) + (hd - plogp(bb + d, n)) + hb + hc;
        best = std::min(best, std::max(0.0, h));
      }
      parts.push_back(best);
    }
    std::sort(parts.begin(), parts.end());
    double s = 0.0;
    for (double p : parts) s += p;
    return s;
  };
  auto total_entropy = [&](const std::vector<VertexSet>& x) {
    std::vector<double> parts;
    for (const auto& c : x) parts.push_back(h_binary(static_cast<double>(c.size())));
    std::sort(parts.begin(), parts.end());
    double s = 0.0;
    for (double p : parts) s += p;
    return s;
  };

  const double hx = total_entropy(ca), hy = total_entropy(cb);
  const double hmax = std::max(hx, hy);
  if (hmax == 0.0) return 1.0;
  const double hx_given_y = conditional(ca, cb, true);
  const double hy_given_x = conditional(cb, ca, false);
  const double mutual = 0.5 * ((hx - hx_given_y) + (hy - hy_given_x));
  return std::clamp(mutual / hmax, 0.0, 1.0);
}

double omega(const Cover& a, const Cover& b) {
  require_same_size(a.num_vertices(), b.num_vertices(), "omega");
  const double n = static_cast<double>(a.num_vertices());
  const double pairs = choose2(n);
  if (pairs == 0.0) return 1.0;

  // Shared-community counts for pairs with at least one shared community.
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> shared;
  auto accumulate = [&](const Cover& c, bool first) {
    for (const auto& members : c.communities()) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          auto& s = shared[(static_cast<std::uint64_t>(members[i]) << 32) | members[j]];
          (first ? s.first : s.second) += 1;
        }
      }
    }
  };
  accumulate(a, true);
  accumulate(b, false);

  std::unordered_map<std::uint32_t, double> count_a, count_b;
  double agree_nonzero = 0.0;
  for (const auto& [key, s] : shared) {
    count_a[s.first] += 1.0;
    count_b[s.second] += 1.0;
    if (s.first == s.second) agree_nonzero += 1.0;
  }
  const double untouched = pairs - static_cast<double>(shared.size());
  count_a[0] += untouched;
  count_b[0] += untouched;

  const double observed = (agree_nonzero + untouched) / pairs;
  double expected = 0.0;
  for (const auto& [k, na] : count_a) {
    auto it = count_b.find(k);
    if (it != count_b.end()) expected += na * it->second;
  }
  expected /= pairs * pairs;
  if (expected >= 1.0) return observed >= 1.0 ? 1.0 : 0.0;
  return (observed - expected) / (1.0 - expected);
}

double fuzzy_rand(const FuzzyAssignment& a, const FuzzyAssignment& b) {
  require_same_size(a.num_vertices(), b.num_vertices(), "fuzzy_rand");
  const std::size_t n = a.num_vertices();
  const double pairs = choose2(static_cast<double>(n));
  if (pairs == 0.0) return 1.0;

  const auto da = a.dense();
  const auto db = b.dense();
  const std::size_t la = a.num_communities(), lb = b.num_communities();
  auto equivalence = [](const double* x, const double* y, std::size_t len) {
    double l1 = 0.0;
    for (std::size_t c = 0; c < len; ++c) l1 += std::abs(x[c] - y[c]);
    return 1.0 - 0.5 * l1;
  };

  double s1 = 0.0, s2 = 0.0, disagreement = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double fa = equivalence(da.data() + i * la, da.data() + j * la, la);
      const double fb = equivalence(db.data() + i * lb, db.data() + j * lb, lb);
      s1 += fa;
      s2 += fb;
      disagreement += std::abs(fa - fb);
    }
  }
  const double ri_u = (pairs - disagreement) / pairs;
  const double ri_e = (s1 * s2 + (pairs - s1) * (pairs - s2)) / (pairs * pairs);
  if (ri_e >= 1.0) return ri_u >= 1.0 ? 1.0 : 0.0;
  return (ri_u - ri_e) / (1.0 - ri_e);
}

Partition restrict_partition(const Partition& p, const std::vector<VertexId>& vertices) {
  std::vector<CommunityId> labels;
  labels.reserve(vertices.size());
  for (VertexId v : vertices) {
    if (v >= p.num_vertices()) throw InvalidArgument("restrict_partition: vertex out of range");
    labels.push_back(p.label(v));
  }
  return Partition(std::move(labels));
}

}  // namespace ecd
