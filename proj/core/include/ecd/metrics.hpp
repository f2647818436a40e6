#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ecd/community.hpp"

namespace ecd {

/// Sparse contingency table between two partitions of the same vertex set.
struct ContingencyTable {
  struct Cell {
    CommunityId row;
    CommunityId col;
    std::size_t count;
  };

  std::vector<Cell> cells;             ///< non-zero cells, sorted by (row, col)
  std::vector<std::size_t> row_sums;   ///< community sizes of the first partition
  std::vector<std::size_t> col_sums;   ///< community sizes of the second partition
  std::size_t total = 0;
};

ContingencyTable contingency(const Partition& a, const Partition& b);

/// Normalized mutual information, 2 I(a;b) / (H(a) + H(b)), natural log.
/// Two single-community partitions score 1.
double nmi(const Partition& a, const Partition& b);

/// Hubert-Arabie adjusted Rand index.
double ari(const Partition& a, const Partition& b);

/// Overlapping NMI of McDaid, Greene and Hurley: I / max(H(X), H(Y)) over the
/// binary membership variables of each community, with the Lancichinetti
/// admissibility constraint on conditional entropies.
double onmi(const Cover& a, const Cover& b);

/// Omega index (Collins and Dent): chance-corrected agreement on the number of
/// communities each vertex pair shares.
double omega(const Cover& a, const Cover& b);

/// Adjusted fuzzy Rand index over unordered vertex pairs, with pair
/// equivalence f(i,j) = 1 - 0.5 * sum_c |a_ic - a_jc| and expectation
/// RI_e = (s1 s2 + (M - s1)(M - s2)) / M^2 where M is the pair count.
double fuzzy_rand(const FuzzyAssignment& a, const FuzzyAssignment& b);

/// Restricts a partition to `vertices` (which are renumbered 0..k-1 in the given order).
Partition restrict_partition(const Partition& p, const std::vector<VertexId>& vertices);

}  // namespace ecd
