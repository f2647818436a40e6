#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "ecd/community.hpp"
#include "ecd/graph.hpp"

namespace ecd {

/// Parameters of the planted-community generator. Degrees follow a power law
/// with exponent `degree_exponent` on [k_min, k_max], where k_min is solved so
/// that the expected mean is k_avg; community sizes follow a power law with
/// exponent `size_exponent` on [c_min, c_max].
struct BenchConfig {
  std::size_t n = 1000;
  double k_avg = 20.0;
  std::size_t k_max = 50;
  double mu = 0.3;
  std::size_t c_min = 20;
  std::size_t c_max = 100;
  /// Fraction of vertices with more than one membership.
  double overlap_fraction = 0.0;
  /// Memberships of each overlapping vertex.
  std::size_t overlap_memberships = 2;
  double degree_exponent = 2.0;
  double size_exponent = 1.0;
  std::uint64_t seed = 1;

  /// Throws InvalidArgument naming the violated constraint.
  void validate() const;
};

/// The large default instance (n=10000, mean degree 50, max degree 150,
/// community sizes 20..100).
BenchConfig large_bench_config();

struct BenchStats {
  double mean_degree = 0.0;
  /// Fraction of edge endpoints on edges whose endpoints share no community
  /// (for fuzzy truth: 1 - mean co-membership s_ij over edges).
  double mixing = 0.0;
  std::size_t edges = 0;
  /// Stubs that could not be wired within the rejection budget.
  std::size_t dropped_stubs = 0;
  /// Vertices whose internal degree had to be lowered to fit their community.
  std::size_t clamped_vertices = 0;
  /// Fuzzy generator only: solved intra/inter probabilities and expected edge count.
  double p1 = 0.0;
  double p0 = 0.0;
  double expected_edges = 0.0;
};

template <typename Truth>
struct Benchmark {
  Graph graph;
  Truth truth;
  BenchStats stats;
};

Benchmark<Partition> gen_disjoint(const BenchConfig& cfg);
Benchmark<Cover> gen_overlapping(const BenchConfig& cfg);
/// Crisp overlapping communities with uniform random membership weights;
/// edges drawn independently with p_ij = s_ij p1 + (1 - s_ij) p0 where
/// s_ij = sum_c min(a_ic, a_jc).
Benchmark<FuzzyAssignment> gen_fuzzy(const BenchConfig& cfg);

/// Observed mixing: fraction of edges whose endpoints share no community.
double realized_mixing(const Graph& g, const Cover& truth);

}  // namespace ecd
