#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ecd/community.hpp"
#include "ecd/detectors.hpp"
#include "ecd/graph.hpp"
#include "ecd/io.hpp"

namespace ecd {

struct BaseSolution {
  std::string algorithm;
  std::size_t ordering_index = 0;
  std::uint64_t seed = 0;
  Partition partition;
};

/// The M*K base partitions feeding an ensemble (fewer when runs failed or
/// after selection).
struct BaseSolutionSet {
  std::vector<BaseSolution> solutions;
  std::vector<std::string> algorithms;
  std::size_t num_orderings = 0;
  std::uint64_t seed = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_messages;

  std::size_t size() const noexcept { return solutions.size(); }
  std::size_t num_vertices() const noexcept { return solutions.empty() ? 0 : solutions.front().partition.num_vertices(); }
};

inline constexpr std::size_t kDefaultOrderingCap = 50;

/// K = min(ceil(0.2 |V|), cap), at least 1.
std::size_t default_ordering_count(std::size_t num_vertices, std::size_t cap = kDefaultOrderingCap);

/// Ordering k of a run seeded with `seed`; shared by every detector.
VertexOrdering ensemble_ordering(std::size_t num_vertices, std::uint64_t seed, std::size_t k);

/// Runs every detector on K orderings. A detector that throws is recorded in
/// `failures` and skipped; if every run fails, throws Error.
BaseSolutionSet generate_base_solutions(const Graph& g, std::span<const BaseDetector> detectors, std::size_t num_orderings,
                                        std::uint64_t seed, std::size_t threads = 0);

/// Dense |V|x|V| fraction of partitions placing each pair together (row-major).
std::vector<double> co_occurrence(std::span<const Partition> partitions);

struct ConsensusOptions {
  /// Co-occurrence fractions below this are dropped before re-clustering.
  double threshold = 0.5;
  std::size_t max_rounds = 10;
  std::size_t threads = 0;
};

struct ConsensusResult {
  Partition partition;
  std::size_t rounds = 0;
  /// False when max_rounds elapsed before the consensus matrix became block diagonal.
  bool converged = false;
};

/// Iterated consensus clustering (Lancichinetti & Fortunato). The first
/// consensus matrix is built from `initial`; each later round re-runs every
/// detector K times on the thresholded consensus graph.
ConsensusResult consensus_from_solutions(std::span<const Partition> initial, std::span<const BaseDetector> detectors,
                                         std::size_t num_orderings, std::uint64_t seed,
                                         const ConsensusOptions& options = {});

ConsensusResult consensus_clustering(const Graph& g, std::span<const BaseDetector> detectors, std::size_t num_orderings,
                                     std::uint64_t seed, const ConsensusOptions& options = {});

/// Writes one partition file per solution plus manifest.json into `dir`.
void save_solution_set(const std::filesystem::path& dir, const BaseSolutionSet& set, const SymbolTable& table);
/// Writes a manifest at `manifest_path` referencing existing partition files.
void write_manifest(const std::filesystem::path& manifest_path, const BaseSolutionSet& set,
                    const std::vector<std::filesystem::path>& partition_files);
/// Reads a manifest and the partition files it references (paths relative to the manifest).
BaseSolutionSet load_solution_set(const std::filesystem::path& manifest_path, const SymbolTable& table,
                                  std::vector<std::filesystem::path>* partition_files = nullptr);

}  // namespace ecd
