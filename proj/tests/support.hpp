#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <utility>
#include <vector>

#include "relcc/relcc.hpp"

namespace test_support {

using namespace relcc;

inline std::string fixture_path(const char* name) {
  return std::string(RELCC_DATA_DIR) + "/" + name;
}

inline Graph graph_of(VertexId n, std::vector<VertexPair> edges) {
  return build_graph(n, edges);
}

// Hospital example, vertices A..E numbered 0..4. Patients A, B and doctor E
// share hospital 1; patients C, D and E share hospital 2.
inline Graph hospital_graph() {
  return graph_of(5, {{0, 1}, {0, 4}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
}

inline AffiliationBipartite hospital_affiliation() {
  const std::vector<Membership> rows = {{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 0}, {4, 1}};
  return build_affiliation(5, 2, rows);
}

inline CapacityMask hospital_mask() {
  return capacity_from_affiliation(hospital_affiliation());
}

inline CapacityMask random_mask(RandomEngine& rng, VertexId n, double density) {
  std::vector<VertexPair> pairs;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < density) pairs.push_back({u, v});
  return CapacityMask::from_pairs(n, pairs);
}

inline Graph random_subgraph(RandomEngine& rng, const CapacityMask& mask, double density) {
  std::vector<VertexPair> edges;
  for (const auto& pair : mask.pairs())
    if (uniform_unit(rng) < density) edges.push_back(pair);
  return build_graph(mask.vertex_count(), edges);
}

inline Graph random_graph(RandomEngine& rng, VertexId n, double density) {
  std::vector<VertexPair> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < density) edges.push_back({u, v});
  return build_graph(n, edges);
}

}  // namespace test_support
