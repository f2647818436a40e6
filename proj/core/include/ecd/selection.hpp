#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ecd/community.hpp"
#include "ecd/matrix.hpp"

namespace ecd {

/// Pairwise NMI between base solutions (unit diagonal) and each solution's
/// quality: the sum of its similarity to every other solution.
struct SolutionScoreboard {
  DenseMatrix similarity;
  std::vector<double> quality;

  std::size_t size() const noexcept { return quality.size(); }
};

SolutionScoreboard score_solutions(std::span<const Partition> solutions, std::size_t threads = 0);
/// Scoreboard from a precomputed symmetric similarity matrix.
SolutionScoreboard scoreboard_from_similarity(DenseMatrix similarity);

std::vector<double> quality_scores(std::span<const Partition> solutions, std::size_t threads = 0);

/// Every selector returns min(S, size) distinct solution indices in the order
/// they were chosen. Ties go to the lower index.
std::vector<std::size_t> select_quality(const SolutionScoreboard& sb, std::size_t s);
std::vector<std::size_t> select_diversity(const SolutionScoreboard& sb, std::size_t s);
std::vector<std::size_t> select_combined(const SolutionScoreboard& sb, std::size_t s, double alpha = 0.5);

struct VrrwOptions {
  double lambda = 0.9;
  double alpha = 0.5;
  double tolerance = 1e-8;
  std::size_t max_iterations = 10000;
};

struct VrrwResult {
  std::vector<std::size_t> selected;
  std::vector<double> occupancy;
  std::size_t iterations = 0;
  bool converged = false;
  /// Largest |sum occupancy - 1| seen after renormalization, across iterations.
  double max_normalization_error = 0.0;
};

/// Vertex-reinforced random walk over the solution graph (edge weight 1 - q);
/// returns the S solutions with the largest stationary occupancy.
VrrwResult select_vrrw(const SolutionScoreboard& sb, std::size_t s, const VrrwOptions& options = {});

}  // namespace ecd
