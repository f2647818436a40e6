#pragma once

#include <cstdint>

#include "ecd/benchgen.hpp"

namespace ecd::testing {

/// Small planted instance used by the slower tests: mean degree 15, maximum
/// degree 40, communities of 20 to 50 vertices.
inline BenchConfig desk_config(std::size_t n, double mu, std::uint64_t seed) {
  BenchConfig cfg;
  cfg.n = n;
  cfg.k_avg = 15.0;
  cfg.k_max = 40;
  cfg.c_min = 20;
  cfg.c_max = 50;
  cfg.mu = mu;
  cfg.seed = seed;
  return cfg;
}

}  // namespace ecd::testing
