#include "ecd/endisco.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "ecd/ensemble.hpp"
#include "ecd/error.hpp"
#include "ecd/parallel.hpp"
#include "ecd/random.hpp"

namespace ecd {
namespace {

void check_community(const Graph& g, std::span<const VertexId> community) {
  if (community.empty()) throw InvalidArgument("involvement: empty community");
  for (VertexId u : community) {
    if (u >= g.num_vertices()) throw InvalidArgument("involvement: community member out of range");
  }
}

double rcc_from_distances(const std::vector<HopDistance>& dist, VertexId v, std::span<const VertexId> community) {
  std::uint64_t total = 0;
  std::size_t others = 0;
  for (VertexId u : community) {
    if (u == v) continue;
    if (!dist[u]) return 0.0;
    total += *dist[u];
    ++others;
  }
  if (others == 0) return 1.0;
  return static_cast<double>(others) / static_cast<double>(total);
}

double idc_from_distances(const std::vector<HopDistance>& dist, VertexId v, VertexId centroid) {
  if (v == centroid) return 1.0;
  if (!dist[centroid]) return 0.0;
  return 1.0 / static_cast<double>(*dist[centroid]);
}

}  // namespace

double involvement_rcc(const Graph& g, VertexId v, std::span<const VertexId> community) {
  check_community(g, community);
  return rcc_from_distances(bfs_distances(g, v), v, community);
}

VertexId community_centroid(const Graph& g, std::span<const VertexId> community) {
  check_community(g, community);
  const Subgraph sub = induced_subgraph(g, community);
  const auto s = sub.graph.num_vertices();
  VertexId best = sub.to_parent.front();
  double best_closeness = -1.0;
  for (VertexId i = 0; i < s; ++i) {
    const auto dist = bfs_distances(sub.graph, i);
    std::uint64_t total = 0;
    std::size_t reached = 0;
    for (const auto& d : dist) {
      if (d && *d > 0) {
        total += *d;
        ++reached;
      }
    }
    double closeness = 0.0;
    if (reached > 0) {
      closeness = static_cast<double>(reached) / static_cast<double>(total) *
                  (static_cast<double>(reached) / static_cast<double>(s - 1));
    }
    // to_parent is ascending, so strict > keeps the lowest id on ties.
    if (closeness > best_closeness) {
      best_closeness = closeness;
      best = sub.to_parent[i];
    }
  }
  return best;
}

double involvement_idc(const Graph& g, VertexId v, std::span<const VertexId> community) {
  const VertexId centroid = community_centroid(g, community);
  if (v >= g.num_vertices()) throw InvalidArgument("involvement: vertex out of range");
  return idc_from_distances(bfs_distances(g, v), v, centroid);
}

DenseMatrix feature_distances(const Graph& g, std::span<const Partition> bases, Involvement inv,
                              std::size_t threads) {
  const auto n = g.num_vertices();
  std::vector<VertexSet> communities;
  for (const auto& p : bases) {
    if (p.num_vertices() != n) throw InvalidArgument("feature_distances: base partition size mismatch");
    for (auto& c : p.communities()) communities.push_back(std::move(c));
  }
  if (communities.empty()) throw InvalidArgument("feature_distances: no base partitions");

  std::vector<VertexId> centroids;
  if (inv == Involvement::kIdc) {
    centroids.resize(communities.size());
    parallel_for(communities.size(), threads,
                 [&](std::size_t c) { centroids[c] = community_centroid(g, communities[c]); });
  }

  DenseMatrix f(n, communities.size());
  parallel_for(n, threads, [&](std::size_t i) {
    const auto v = static_cast<VertexId>(i);
    const auto dist = bfs_distances(g, v);
    auto row = f.row(v);
    for (std::size_t c = 0; c < communities.size(); ++c) {
      const double involvement = inv == Involvement::kRcc ? rcc_from_distances(dist, v, communities[c])
                                                          : idc_from_distances(dist, v, centroids[c]);
      row[c] = 1.0 - involvement;
    }
  });
  return f;
}

std::vector<double> posterior(std::span<const double> distances) {
  if (distances.empty()) throw InvalidArgument("posterior: no communities");
  const double clu = static_cast<double>(distances.size());
  const double dmax = *std::max_element(distances.begin(), distances.end());
  const double sum = std::accumulate(distances.begin(), distances.end(), 0.0);
  const double denom = clu * dmax + clu - sum;
  std::vector<double> p(distances.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = (dmax - distances[i] + 1.0) / denom;
  return p;
}

DenseMatrix posterior_matrix(const DenseMatrix& distances) {
  DenseMatrix p(distances.rows, distances.cols);
  for (std::size_t v = 0; v < distances.rows; ++v) {
    const auto row = posterior(distances.row(v));
    std::copy(row.begin(), row.end(), p.row(v).begin());
  }
  return p;
}

DenseMatrix build_ensemble_matrix(const DenseMatrix& posteriors, Similarity sim, std::size_t threads) {
  const auto n = posteriors.rows;
  const auto clu = posteriors.cols;
  if (clu == 0) throw InvalidArgument("build_ensemble_matrix: empty profiles");
  DenseMatrix m(n, n);

  if (sim == Similarity::kCosine) {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> x(posteriors.data.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(clu));
    RowMajor unit = x;
    for (Eigen::Index r = 0; r < unit.rows(); ++r) {
      const double norm = unit.row(r).norm();
      if (!(norm > 0.0)) throw Error("build_ensemble_matrix: zero-norm posterior profile");
      unit.row(r) /= norm;
    }
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    gram.selfadjointView<Eigen::Upper>().rankUpdate(unit);
    for (std::size_t u = 0; u < n; ++u) {
      m(u, u) = 1.0;
      for (std::size_t v = u + 1; v < n; ++v) {
        const double s = std::clamp(gram(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)), -1.0, 1.0);
        m(u, v) = s;
        m(v, u) = s;
      }
    }
    return m;
  }

  parallel_for(n, threads, [&](std::size_t u) {
    const auto pu = posteriors.row(u);
    m(u, u) = 1.0;
    for (std::size_t v = u + 1; v < n; ++v) {
      const auto pv = posteriors.row(v);
      double worst = 0.0;
      for (std::size_t i = 0; i < clu; ++i) worst = std::max(worst, std::abs(pu[i] - pv[i]));
      m(u, v) = 1.0 - worst;
    }
  });
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) m(v, u) = m(u, v);
  }
  return m;
}

Graph sparsify_ensemble_matrix(const Graph& g, const DenseMatrix& ensemble) {
  const auto n = g.num_vertices();
  if (ensemble.rows != n || ensemble.cols != n) throw InvalidArgument("sparsify: matrix size mismatch");
  GraphBuilder b(n);
  for (const auto& e : g.edges()) b.add_edge(e.u, e.v, std::max(0.0, ensemble(e.u, e.v)));
  if (n < 2) return b.build();

  const auto top = std::min<std::size_t>(
      n - 1, static_cast<std::size_t>(std::ceil(2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n))));
  std::vector<VertexId> candidates;
  for (VertexId u = 0; u < n; ++u) {
    candidates.clear();
    for (VertexId v = 0; v < n; ++v) {
      if (v != u) candidates.push_back(v);
    }
    auto more_similar = [&](VertexId a, VertexId c) {
      return ensemble(u, a) != ensemble(u, c) ? ensemble(u, a) > ensemble(u, c) : a < c;
    };
    std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(top), candidates.end(),
                     more_similar);
    for (std::size_t i = 0; i < top; ++i) {
      const VertexId v = candidates[i];
      b.add_edge(u, v, std::max(0.0, ensemble(u, v)));
    }
  }
  return b.build();
}

Partition endisco_from_solutions(const Graph& g, std::span<const Partition> bases, std::uint64_t seed,
                                 const EndiscoOptions& options) {
  if (bases.empty()) throw InvalidArgument("endisco: no base partitions");
  const auto distances = feature_distances(g, bases, options.involvement, options.threads);
  const auto posteriors = posterior_matrix(distances);
  const auto ensemble = build_ensemble_matrix(posteriors, options.similarity, options.threads);
  const Graph reweighted = sparsify_ensemble_matrix(g, ensemble);
  const auto ordering = random_ordering(g.num_vertices(), derive_seed(seed, {0xe4d, 0}));
  return options.reclusterer.detect(reweighted, ordering, derive_seed(seed, {0xe4d, 1}));
}

Partition endisco(const Graph& g, std::span<const BaseDetector> detectors, std::size_t num_orderings,
                  std::uint64_t seed, const EndiscoOptions& options) {
  auto set = generate_base_solutions(g, detectors, num_orderings, seed, options.threads);
  std::vector<Partition> bases;
  bases.reserve(set.size());
  for (auto& s : set.solutions) bases.push_back(std::move(s.partition));
  return endisco_from_solutions(g, bases, seed, options);
}

}  // namespace ecd
