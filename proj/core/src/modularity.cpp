#include <vector>

#include "ecd/detectors.hpp"
#include "ecd/error.hpp"

namespace ecd {

double modularity(const Graph& g, const Partition& p) {
  if (p.num_vertices() != g.num_vertices()) throw InvalidArgument("modularity: partition size mismatch");
  const double total = g.total_weight();
  if (g.num_edges() == 0 || total <= 0.0) throw InvalidArgument("modularity undefined on a graph without edges");

  std::vector<double> internal(p.num_communities(), 0.0);
  std::vector<double> strength(p.num_communities(), 0.0);
  for (const auto& e : g.edges()) {
    if (p.label(e.u) == p.label(e.v)) internal[p.label(e.u)] += e.weight;
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) strength[p.label(v)] += g.weighted_degree(v);

  double q = 0.0;
  for (std::size_t c = 0; c < internal.size(); ++c) {
    const double a = strength[c] / (2.0 * total);
    q += internal[c] / total - a * a;
  }
  return q;
}

}  // namespace ecd
