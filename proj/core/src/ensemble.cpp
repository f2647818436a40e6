#include "ecd/ensemble.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include <json.hpp>

#include "ecd/error.hpp"
#include "ecd/parallel.hpp"
#include "ecd/random.hpp"

namespace ecd {

std::size_t default_ordering_count(std::size_t num_vertices, std::size_t cap) {
  const auto k = static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(num_vertices)));
  return std::max<std::size_t>(1, std::min(k, cap));
}

VertexOrdering ensemble_ordering(std::size_t num_vertices, std::uint64_t seed, std::size_t k) {
  return random_ordering(num_vertices, derive_seed(seed, {0x0bde, k}));
}

BaseSolutionSet generate_base_solutions(const Graph& g, std::span<const BaseDetector> detectors,
                                        std::size_t num_orderings, std::uint64_t seed, std::size_t threads) {
  if (detectors.empty()) throw InvalidArgument("generate_base_solutions: no detectors");
  if (num_orderings == 0) throw InvalidArgument("generate_base_solutions: K must be at least 1");

  const auto n = g.num_vertices();
  std::vector<VertexOrdering> orderings;
  orderings.reserve(num_orderings);
  for (std::size_t k = 0; k < num_orderings; ++k) orderings.push_back(ensemble_ordering(n, seed, k));

  const std::size_t runs = detectors.size() * num_orderings;
  std::vector<std::optional<BaseSolution>> slots(runs);
  std::vector<std::string> errors(runs);
  parallel_for(runs, threads, [&](std::size_t r) {
    const std::size_t m = r / num_orderings, k = r % num_orderings;
    const std::uint64_t run_seed = derive_seed(seed, {k, m});
    try {
      Partition p = detectors[m].detect(g, orderings[k], run_seed);
      if (p.num_vertices() != n) throw Error("partition does not cover the graph");
      slots[r] = BaseSolution{detectors[m].name, k, run_seed, std::move(p)};
    } catch (const std::exception& e) {
      errors[r] = detectors[m].name + "#" + std::to_string(k) + ": " + e.what();
    }
  });

  BaseSolutionSet set;
  set.num_orderings = num_orderings;
  set.seed = seed;
  for (const auto& d : detectors) set.algorithms.push_back(d.name);
  for (std::size_t r = 0; r < runs; ++r) {
    if (slots[r]) {
      set.solutions.push_back(std::move(*slots[r]));
    } else {
      ++set.failures;
      set.failure_messages.push_back(errors[r]);
    }
  }
  if (set.solutions.empty()) {
    throw Error("every base detector run failed; first error: " + set.failure_messages.front());
  }
  return set;
}

std::vector<double> co_occurrence(std::span<const Partition> partitions) {
  if (partitions.empty()) throw InvalidArgument("co_occurrence: no partitions");
  const auto n = partitions.front().num_vertices();
  std::vector<double> counts(n * n, 0.0);
  for (const auto& p : partitions) {
    if (p.num_vertices() != n) throw InvalidArgument("co_occurrence: partitions differ in size");
    for (const auto& members : p.communities()) {
      for (VertexId u : members) {
        double* row = counts.data() + static_cast<std::size_t>(u) * n;
        for (VertexId v : members) row[v] += 1.0;
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(partitions.size());
  for (auto& c : counts) c *= inv;
  return counts;
}

namespace {

using json = nlohmann::json;

std::string solution_file_name(const BaseSolution& s, std::size_t index) {
  return std::to_string(index) + "_" + s.algorithm + "_k" + std::to_string(s.ordering_index) + ".part";
}

}  // namespace

void write_manifest(const std::filesystem::path& manifest_path, const BaseSolutionSet& set,
                    const std::vector<std::filesystem::path>& partition_files) {
  if (partition_files.size() != set.solutions.size()) throw InvalidArgument("write_manifest: file list size mismatch");
  const auto base = manifest_path.has_parent_path() ? manifest_path.parent_path() : std::filesystem::path(".");
  json j;
  j["algorithms"] = set.algorithms;
  j["K"] = set.num_orderings;
  j["seed"] = set.seed;
  j["num_vertices"] = set.num_vertices();
  j["failures"] = set.failures;
  j["solutions"] = json::array();
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    const auto& s = set.solutions[i];
    const auto rel = std::filesystem::proximate(partition_files[i], base);
    j["solutions"].push_back({{"algorithm", s.algorithm},
                              {"ordering", s.ordering_index},
                              {"seed", s.seed},
                              {"communities", s.partition.num_communities()},
                              {"file", rel.generic_string()}});
  }
  std::ofstream out(manifest_path);
  if (!out) throw Error("cannot write " + manifest_path.string());
  out << j.dump(2) << '\n';
}

void save_solution_set(const std::filesystem::path& dir, const BaseSolutionSet& set, const SymbolTable& table) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> files;
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    files.push_back(dir / solution_file_name(set.solutions[i], i));
    save_partition(files.back(), set.solutions[i].partition, table);
  }
  write_manifest(dir / "manifest.json", set, files);
}

BaseSolutionSet load_solution_set(const std::filesystem::path& manifest_path, const SymbolTable& table,
                                  std::vector<std::filesystem::path>* partition_files) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open " + manifest_path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(manifest_path.string(), 0, e.what());
  }
  const auto base = manifest_path.has_parent_path() ? manifest_path.parent_path() : std::filesystem::path(".");
  BaseSolutionSet set;
  try {
    set.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    set.num_orderings = j.at("K").get<std::size_t>();
    set.seed = j.at("seed").get<std::uint64_t>();
    set.failures = j.value("failures", std::size_t{0});
    for (const auto& s : j.at("solutions")) {
      const auto file = base / s.at("file").get<std::string>();
      set.solutions.push_back(BaseSolution{s.at("algorithm").get<std::string>(), s.at("ordering").get<std::size_t>(),
                                           s.at("seed").get<std::uint64_t>(), import_partition(file, table)});
      if (partition_files) partition_files->push_back(file);
    }
  } catch (const json::exception& e) {
    throw ParseError(manifest_path.string(), 0, e.what());
  }
  if (set.solutions.empty()) throw ParseError(manifest_path.string(), 0, "manifest lists no solutions");
  return set;
}

}  // namespace ecd
