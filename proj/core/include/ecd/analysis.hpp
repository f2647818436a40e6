#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecd/community.hpp"
#include "ecd/detectors.hpp"
#include "ecd/graph.hpp"
#include "ecd/medoc.hpp"

namespace ecd {

/// k-shell index of every vertex (0 for isolated vertices).
std::vector<std::uint32_t> k_shell_decomposition(const Graph& g);

inline constexpr std::size_t kShellTiers = 3;
inline constexpr std::size_t kAssociationBuckets = 4;

/// Tier 0 = periphery, 2 = core: the community's shell range [1, max] is cut
/// into three equal parts.
std::size_t shell_tier(std::uint32_t shell, std::uint32_t max_shell);
/// Buckets [0,.25), [.25,.5), [.5,.75), [.75,1].
std::size_t association_bucket(double association);

struct CommunityShellProfile {
  VertexSet members;
  std::vector<std::uint32_t> shell;     ///< within the community's induced subgraph
  std::vector<double> association;
  std::array<std::array<std::size_t, kAssociationBuckets>, kShellTiers> table{};
};

/// Core-periphery cross-tabulation per community. `associations[c][i]` is the
/// association of communities[c][i] to community c.
std::vector<CommunityShellProfile> core_periphery_profile(const Graph& g, const std::vector<VertexSet>& communities,
                                                          const std::vector<std::vector<double>>& associations);

/// Convenience for MeDOC++ output: the meta-community columns of its cover.
std::vector<CommunityShellProfile> core_periphery_profile(const Graph& g, const MedocResult& result);

/// Spearman rank correlation with average ranks for ties; nullopt when either
/// side is constant or fewer than two points are given.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

inline constexpr double kStableAssociation = 1.0 - 1e-9;

struct StableSnapshot {
  /// Vertices whose largest association is 1, with the meta-community they reach it in.
  std::vector<VertexId> vertices;
  std::vector<CommunityId> community;
};

struct StableComparison {
  std::size_t shared_vertices = 0;
  std::optional<double> nmi;  ///< nullopt when no stable vertex is shared
  std::optional<double> ari;
};

struct StableReport {
  std::vector<StableSnapshot> snapshots;
  std::vector<StableComparison> consecutive;  ///< snapshot t vs t+1
};

/// Stable set of one MeDOC++ run. Only vertices with at least one edge count.
StableSnapshot stable_vertices(const Graph& g, const MedocResult& result);

/// Compares two stable sets on the vertices they share.
StableComparison compare_stable(const StableSnapshot& a, const StableSnapshot& b);

/// Runs MeDOC++ on each snapshot (all snapshots share one vertex id space;
/// a vertex is present in a snapshot when it has an edge there).
StableReport stable_communities(std::span<const Graph> snapshots, std::span<const BaseDetector> detectors,
                                std::size_t num_orderings, std::uint64_t seed, const MedocOptions& options = {});

/// A community finder evaluated over many vertex orderings. `run` receives
/// the run index and a seed derived from it.
struct DegeneracySubject {
  std::string name;
  std::function<Partition(const Graph&, std::size_t run, std::uint64_t seed)> run;
};

struct DistributionSummary {
  std::string name;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::size_t samples = 0;

  double iqr() const noexcept { return q3 - q1; }
};

/// Linear-interpolated quantile of an unsorted sample.
double quantile(std::vector<double> sample, double q);
DistributionSummary summarize(std::string name, std::vector<double> sample);

/// Pairwise NMI of `runs` solutions per subject, summarized per subject.
std::vector<DistributionSummary> degeneracy_report(const Graph& g, std::span<const DegeneracySubject> subjects,
                                                   std::size_t runs, std::uint64_t seed, std::size_t threads = 0);

/// A standalone detector run on ordering `run`.
DegeneracySubject degeneracy_subject(const BaseDetector& detector);

enum class EnsembleMethod { kEndisco, kMedoc, kConsensus };
const char* ensemble_method_name(EnsembleMethod m);

struct RuntimeRatio {
  EnsembleMethod method;
  double base_seconds = 0.0;   ///< summed wall-clock of the M*K base runs
  double total_seconds = 0.0;  ///< base runs plus the ensemble stage
  double theta = 0.0;          ///< total / base
};

/// Single-threaded timing of one ensemble pipeline.
RuntimeRatio runtime_ratio(const Graph& g, EnsembleMethod method, std::span<const BaseDetector> detectors,
                           std::size_t num_orderings, std::uint64_t seed);

/// Long-format CSV row: method, statistic, value.
struct CsvRow {
  std::string method;
  std::string statistic;
  double value;
};
void write_csv(std::ostream& out, std::span<const CsvRow> rows);

}  // namespace ecd
