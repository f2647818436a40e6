#include <utility>

#include "ecd/detectors.hpp"
#include "ecd/error.hpp"

namespace ecd {

std::vector<std::string> detector_names() { return {"louvain", "lpa", "cnm", "walktrap"}; }

BaseDetector detector_by_name(const std::string& name, unsigned walk_length) {
  if (name == "louvain") return {name, louvain};
  if (name == "lpa" || name == "label_propagation") {
    return {"lpa", [](const Graph& g, const VertexOrdering& o, std::uint64_t s) { return label_propagation(g, o, s); }};
  }
  if (name == "cnm") return {name, greedy_cnm};
  if (name == "walktrap") {
    return {name, [walk_length](const Graph& g, const VertexOrdering& o, std::uint64_t s) {
              return walktrap(g, o, s, walk_length);
            }};
  }
  throw InvalidArgument("unknown detector '" + name + "' (expected louvain, lpa, cnm or walktrap)");
}

std::vector<BaseDetector> default_detectors() {
  std::vector<BaseDetector> out;
  for (const auto& name : detector_names()) out.push_back(detector_by_name(name));
  return out;
}

BaseDetector fixed_detector(std::string name, Partition partition) {
  return {std::move(name), [p = std::move(partition)](const Graph& g, const VertexOrdering&, std::uint64_t) {
            if (p.num_vertices() != g.num_vertices()) {
              throw InvalidArgument("imported partition does not match the graph's vertex count");
            }
            return p;
          }};
}

}  // namespace ecd
