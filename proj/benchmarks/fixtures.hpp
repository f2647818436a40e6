#pragma once

#include <map>

#include "ecd/benchgen.hpp"
#include "ecd/ensemble.hpp"

namespace ecd::bench {

// Planted graph with mean degree 15, degrees capped at 40 and communities of 20..50.
inline const Benchmark<Partition>& planted(std::size_t n, double mu = 0.3) {
  static std::map<std::pair<std::size_t, double>, Benchmark<Partition>> cache;
  auto it = cache.find({n, mu});
  if (it == cache.end()) {
    BenchConfig c;
    c.n = n;
    c.k_avg = 15;
    c.k_max = 40;
    c.c_min = 20;
    c.c_max = 50;
    c.mu = mu;
    it = cache.emplace(std::pair{n, mu}, gen_disjoint(c)).first;
  }
  return it->second;
}

inline std::vector<Partition> base_partitions(const Graph& g, std::size_t k) {
  auto set = generate_base_solutions(g, default_detectors(), k, 1, 1);
  std::vector<Partition> out;
  for (auto& s : set.solutions) out.push_back(std::move(s.partition));
  return out;
}

}  // namespace ecd::bench
