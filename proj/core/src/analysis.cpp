#include "ecd/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>

#include "ecd/endisco.hpp"
#include "ecd/ensemble.hpp"
#include "ecd/error.hpp"
#include "ecd/metrics.hpp"
#include "ecd/parallel.hpp"
#include "ecd/random.hpp"

namespace ecd {

std::vector<std::uint32_t> k_shell_decomposition(const Graph& g) {
  // Batagelj-Zaversnik bucket peeling, O(n + m).
  const auto n = g.num_vertices();
  std::vector<std::uint32_t> deg(n);
  std::uint32_t max_deg = 0;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = static_cast<std::uint32_t>(g.degree(v));
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const auto count = b;
    b = start;
    start += count;
  }
  std::vector<VertexId> vert(n);
  std::vector<std::size_t> pos(n);
  for (VertexId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = vert[i];
    for (VertexId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        const std::uint32_t du = deg[u];
        const std::size_t pu = pos[u];
        const std::size_t pw = bin[du];
        const VertexId w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return deg;
}

std::size_t shell_tier(std::uint32_t shell, std::uint32_t max_shell) {
  if (shell == 0 || max_shell == 0) return 0;
  const auto t = static_cast<std::size_t>(std::ceil(3.0 * shell / static_cast<double>(max_shell)));
  return std::min<std::size_t>(kShellTiers - 1, t == 0 ? 0 : t - 1);
}

std::size_t association_bucket(double association) {
  if (association < 0.25) return 0;
  if (association < 0.5) return 1;
  if (association < 0.75) return 2;
  return 3;
}

std::vector<CommunityShellProfile> core_periphery_profile(const Graph& g, const std::vector<VertexSet>& communities,
                                                          const std::vector<std::vector<double>>& associations) {
  if (communities.size() != associations.size()) throw InvalidArgument("core_periphery_profile: size mismatch");
  std::vector<CommunityShellProfile> out;
  out.reserve(communities.size());
  for (std::size_t c = 0; c < communities.size(); ++c) {
    if (communities[c].size() != associations[c].size()) {
      throw InvalidArgument("core_periphery_profile: association list does not match community size");
    }
    CommunityShellProfile prof;
    const Subgraph sub = induced_subgraph(g, communities[c]);
    const auto shells = k_shell_decomposition(sub.graph);
    const std::uint32_t max_shell = shells.empty() ? 0 : *std::max_element(shells.begin(), shells.end());
    prof.members = sub.to_parent;
    prof.shell = shells;
    prof.association.resize(prof.members.size());
    for (std::size_t i = 0; i < communities[c].size(); ++i) {
      const auto it = std::lower_bound(prof.members.begin(), prof.members.end(), communities[c][i]);
      prof.association[static_cast<std::size_t>(it - prof.members.begin())] = associations[c][i];
    }
    for (std::size_t i = 0; i < prof.members.size(); ++i) {
      ++prof.table[shell_tier(prof.shell[i], max_shell)][association_bucket(prof.association[i])];
    }
    out.push_back(std::move(prof));
  }
  return out;
}

std::vector<CommunityShellProfile> core_periphery_profile(const Graph& g, const MedocResult& result) {
  std::vector<VertexSet> communities;
  std::vector<std::vector<double>> associations;
  for (auto& c : auto_threshold_communities(result.association, g)) {
    std::vector<double> assoc;
    assoc.reserve(c.members.size());
    for (VertexId v : c.members) assoc.push_back(result.association(v, c.column));
    communities.push_back(std::move(c.members));
    associations.push_back(std::move(assoc));
  }
  return core_periphery_profile(g, communities, associations);
}

namespace {

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && x[idx[j]] == x[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (std::size_t k = i; k < j; ++k) rank[idx[k]] = r;
    i = j;
  }
  return rank;
}

}  // namespace

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("spearman: length mismatch");
  if (x.size() < 2) return std::nullopt;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

StableSnapshot stable_vertices(const Graph& g, const MedocResult& result) {
  const auto& a = result.association;
  if (a.rows != g.num_vertices()) throw InvalidArgument("stable_vertices: association rows do not match graph");
  StableSnapshot s;
  for (VertexId v = 0; v < a.rows; ++v) {
    if (g.degree(v) == 0) continue;
    const auto row = a.row(v);
    const auto best = std::max_element(row.begin(), row.end());
    if (best != row.end() && *best >= kStableAssociation) {
      s.vertices.push_back(v);
      s.community.push_back(static_cast<CommunityId>(best - row.begin()));
    }
  }
  return s;
}

StableComparison compare_stable(const StableSnapshot& a, const StableSnapshot& b) {
  std::vector<CommunityId> la, lb;
  auto i = a.vertices.begin();
  auto j = b.vertices.begin();
  while (i != a.vertices.end() && j != b.vertices.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      la.push_back(a.community[static_cast<std::size_t>(i - a.vertices.begin())]);
      lb.push_back(b.community[static_cast<std::size_t>(j - b.vertices.begin())]);
      ++i;
      ++j;
    }
  }
  StableComparison c;
  c.shared_vertices = la.size();
  if (la.empty()) return c;
  const Partition pa(std::move(la)), pb(std::move(lb));
  c.nmi = nmi(pa, pb);
  c.ari = ari(pa, pb);
  return c;
}

StableReport stable_communities(std::span<const Graph> snapshots, std::span<const BaseDetector> detectors,
                                std::size_t num_orderings, std::uint64_t seed, const MedocOptions& options) {
  if (snapshots.empty()) throw InvalidArgument("stable_communities: no snapshots");
  StableReport report;
  for (std::size_t t = 0; t < snapshots.size(); ++t) {
    if (snapshots[t].num_vertices() != snapshots.front().num_vertices()) {
      throw InvalidArgument("stable_communities: snapshots must share one vertex id space");
    }
    const auto result = medoc(snapshots[t], detectors, num_orderings, derive_seed(seed, {t}), options);
    report.snapshots.push_back(stable_vertices(snapshots[t], result));
  }
  for (std::size_t t = 0; t + 1 < report.snapshots.size(); ++t) {
    report.consecutive.push_back(compare_stable(report.snapshots[t], report.snapshots[t + 1]));
  }
  return report;
}

double quantile(std::vector<double> sample, double q) {
  if (sample.empty()) throw InvalidArgument("quantile: empty sample");
  std::sort(sample.begin(), sample.end());
  const double pos = q * static_cast<double>(sample.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sample.size() - 1);
  return sample[lo] + (pos - static_cast<double>(lo)) * (sample[hi] - sample[lo]);
}

DistributionSummary summarize(std::string name, std::vector<double> sample) {
  DistributionSummary s;
  s.name = std::move(name);
  s.samples = sample.size();
  if (sample.empty()) return s;
  s.min = *std::min_element(sample.begin(), sample.end());
  s.max = *std::max_element(sample.begin(), sample.end());
  s.q1 = quantile(sample, 0.25);
  s.median = quantile(sample, 0.5);
  s.q3 = quantile(sample, 0.75);
  return s;
}

std::vector<DistributionSummary> degeneracy_report(const Graph& g, std::span<const DegeneracySubject> subjects,
                                                   std::size_t runs, std::uint64_t seed, std::size_t threads) {
  if (runs < 2) throw InvalidArgument("degeneracy_report: need at least two runs");
  std::vector<DistributionSummary> out;
  for (std::size_t s = 0; s < subjects.size(); ++s) {
    std::vector<Partition> solutions(runs);
    parallel_for(runs, threads, [&](std::size_t r) {
      solutions[r] = subjects[s].run(g, r, derive_seed(seed, {0xde9, r}));
    });
    std::vector<double> sims;
    sims.reserve(runs * (runs - 1) / 2);
    for (std::size_t i = 0; i < runs; ++i) {
      for (std::size_t j = i + 1; j < runs; ++j) sims.push_back(nmi(solutions[i], solutions[j]));
    }
    out.push_back(summarize(subjects[s].name, std::move(sims)));
  }
  return out;
}

DegeneracySubject degeneracy_subject(const BaseDetector& detector) {
  return {detector.name, [detector](const Graph& g, std::size_t, std::uint64_t seed) {
            return detector.detect(g, random_ordering(g.num_vertices(), seed), derive_seed(seed, {1}));
          }};
}

const char* ensemble_method_name(EnsembleMethod m) {
  switch (m) {
    case EnsembleMethod::kEndisco:
      return "endisco";
    case EnsembleMethod::kMedoc:
      return "medoc";
    case EnsembleMethod::kConsensus:
      return "consensus";
  }
  return "unknown";
}

RuntimeRatio runtime_ratio(const Graph& g, EnsembleMethod method, std::span<const BaseDetector> detectors,
                           std::size_t num_orderings, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::time_point a, Clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };

  const auto t0 = Clock::now();
  auto set = generate_base_solutions(g, detectors, num_orderings, seed, 1);
  const auto t1 = Clock::now();
  std::vector<Partition> bases;
  for (auto& s : set.solutions) bases.push_back(std::move(s.partition));

  switch (method) {
    case EnsembleMethod::kEndisco: {
      EndiscoOptions opt;
      opt.threads = 1;
      (void)endisco_from_solutions(g, bases, seed, opt);
      break;
    }
    case EnsembleMethod::kMedoc: {
      MedocOptions opt;
      opt.threads = 1;
      (void)medoc_from_solutions(g, bases, seed, opt);
      break;
    }
    case EnsembleMethod::kConsensus: {
      ConsensusOptions opt;
      opt.threads = 1;
      (void)consensus_from_solutions(bases, detectors, num_orderings, seed, opt);
      break;
    }
  }
  const auto t2 = Clock::now();

  RuntimeRatio r{method};
  r.base_seconds = seconds(t0, t1);
  r.total_seconds = seconds(t0, t2);
  r.theta = r.base_seconds > 0.0 ? r.total_seconds / r.base_seconds : 1.0;
  return r;
}

void write_csv(std::ostream& out, std::span<const CsvRow> rows) {
  out << "method,statistic,value\n";
  const auto old = out.precision(17);
  for (const auto& r : rows) out << r.method << ',' << r.statistic << ',' << r.value << '\n';
  out.precision(old);
}

}  // namespace ecd
