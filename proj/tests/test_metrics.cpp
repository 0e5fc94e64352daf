#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

using namespace relcc;
using test_support::graph_of;
using test_support::hospital_graph;
using test_support::hospital_mask;
using test_support::random_graph;
using test_support::random_mask;
using test_support::random_subgraph;

namespace {

CensusOptions sparse_options() {
  CensusOptions options;
  options.dense_limit = 0;
  return options;
}

}  // namespace

TEST_CASE("coefficients reduce and compare exactly") {
  const Coefficient c = Coefficient::ratio(6, 10);
  REQUIRE(c.defined());
  REQUIRE(c.numerator() == 3);
  REQUIRE(c.denominator() == 5);
  REQUIRE(c == Coefficient::ratio(3, 5));
  REQUIRE(c.value() == 0.6);

  const Coefficient u = Coefficient::ratio(7, 0);
  REQUIRE_FALSE(u.defined());
  REQUIRE(u == Coefficient::undefined());
  REQUIRE_THROWS_AS(u.value(), InvalidParamsError);
  REQUIRE_THROWS_AS(Coefficient::ratio(3, 2), InvalidParamsError);
  REQUIRE(Coefficient::ratio(0, 4) == Coefficient::ratio(0, 9));
}

TEST_CASE("hospital census under its own mask") {
  const auto census = triangle_census(hospital_graph(), hospital_mask());
  REQUIRE(census.triangles == 2);
  REQUIRE(census.wedges == 10);
  REQUIRE(census.closed_allowed == 2);
  REQUIRE(census.open_allowed == 0);
  REQUIRE(census.allowed_triangles == 2);
}

TEST_CASE("hospital census under the complete mask") {
  const auto census = triangle_census(hospital_graph(), complete_mask(5));
  REQUIRE(census.triangles == 2);
  REQUIRE(census.wedges == 10);
  REQUIRE(census.closed_allowed == 2);
  REQUIRE(census.open_allowed == 4);
  REQUIRE(census.allowed_triangles == 10);
}

TEST_CASE("hospital coefficients") {
  const Graph g = hospital_graph();
  const auto mask = hospital_mask();
  REQUIRE(global_clustering(g) == Coefficient::ratio(3, 5));
  REQUIRE(relative_clustering(g, mask) == Coefficient::ratio(1, 1));
  REQUIRE(relative_clustering(g, complete_mask(5)) == Coefficient::ratio(3, 5));
  REQUIRE(local_clustering(g, 4) == Coefficient::ratio(1, 3));
  REQUIRE(local_clustering(g, 0) == Coefficient::ratio(1, 1));
  REQUIRE(relative_local_clustering(g, mask, 4) == Coefficient::ratio(1, 1));
  REQUIRE(relative_local_clustering(g, complete_mask(5), 4) == Coefficient::ratio(1, 3));
  REQUIRE(average_local_clustering(g) == Coefficient::ratio(13, 15));
}

TEST_CASE("triangle counts on known shapes") {
  REQUIRE(triangle_count(graph_of(3, {{0, 1}, {1, 2}, {0, 2}})) == 1);
  REQUIRE(triangle_count(graph_of(4, {{0, 1}, {1, 2}, {2, 3}})) == 0);
  // K4 has four triangles
  REQUIRE(triangle_count(graph_of(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})) == 4);
  REQUIRE(triangle_count(hospital_graph()) == 2);
}

TEST_CASE("undefined coefficients on degenerate inputs") {
  const Graph empty = build_graph(4, {});
  REQUIRE_FALSE(global_clustering(empty).defined());
  REQUIRE_FALSE(average_local_clustering(empty).defined());
  REQUIRE_FALSE(local_clustering(empty, 0).defined());
  REQUIRE_FALSE(relative_clustering(empty, complete_mask(4)).defined());

  const Graph edge = graph_of(2, {{0, 1}});
  REQUIRE_FALSE(global_clustering(edge).defined());
  REQUIRE_FALSE(local_clustering(edge, 0).defined());

  // no allowed pairs at all
  const auto empty_mask = CapacityMask::from_pairs(3, {});
  REQUIRE_FALSE(relative_clustering(build_graph(3, {}), empty_mask).defined());
}

TEST_CASE("census validates dimensions and consistency") {
  const auto mask = hospital_mask();
  REQUIRE_THROWS_AS(triangle_census(build_graph(4, {}), mask), DimensionMismatchError);
  const Graph outside = graph_of(5, {{0, 2}});
  REQUIRE_THROWS_AS(triangle_census(outside, mask), MaskViolationError);
  try {
    triangle_census(outside, mask);
    FAIL("expected MaskViolationError");
  } catch (const MaskViolationError& e) {
    REQUIRE(e.violations() == std::vector<VertexPair>{{0, 2}});
  }
}

TEST_CASE("census override classifies only within the allowed universe") {
  // network deliberately holds forbidden edges; allowed triples still classify
  // by how many of their own edges are present
  auto rng = make_engine(Seed{31});
  CensusOptions options;
  options.validate = false;
  CensusOptions sparse = sparse_options();
  sparse.validate = false;
  for (int trial = 0; trial < 40; ++trial) {
    const VertexId n = static_cast<VertexId>(4 + uniform_below(rng, 5));
    const auto mask = random_mask(rng, n, 0.5);
    const Graph g = random_graph(rng, n, 0.5);  // unrelated to the mask
    const auto oracle = oracle_census(g, mask);
    REQUIRE(triangle_census(g, mask, options) == oracle);
    REQUIRE(triangle_census(g, mask, sparse) == oracle);
  }
}

TEST_CASE("both kernels agree with the subset oracle") {
  auto rng = make_engine(Seed{32});
  const CensusOptions sparse = sparse_options();
  for (int trial = 0; trial < 150; ++trial) {
    const VertexId n = static_cast<VertexId>(3 + uniform_below(rng, 10));
    const auto mask = random_mask(rng, n, 0.2 + 0.6 * uniform_unit(rng));
    const Graph g = random_subgraph(rng, mask, 0.2 + 0.6 * uniform_unit(rng));
    const auto expected = oracle_census(g, mask);
    REQUIRE(triangle_census(g, mask) == expected);
    REQUIRE(triangle_census(g, mask, sparse) == expected);
  }
}

TEST_CASE("complete mask degenerates to the classical coefficients") {
  auto rng = make_engine(Seed{33});
  for (int trial = 0; trial < 60; ++trial) {
    const VertexId n = static_cast<VertexId>(1 + uniform_below(rng, 14));
    const Graph g = random_graph(rng, n, 0.15 + 0.7 * uniform_unit(rng));
    const auto mask = complete_mask(n);
    REQUIRE(relative_clustering(g, mask) == global_clustering(g));
    for (VertexId v = 0; v < n; ++v)
      REQUIRE(relative_local_clustering(g, mask, v) == local_clustering(g, v));
    // wedge identity: every allowed triple with 2 or 3 edges is a wedge pattern
    const auto census = triangle_census(g, mask);
    REQUIRE(census.wedges == 3 * census.triangles + census.open_allowed);
    REQUIRE(census.closed_allowed == census.triangles);
  }
}

TEST_CASE("the full graph of a mask has relative clustering one") {
  auto rng = make_engine(Seed{34});
  for (int trial = 0; trial < 60; ++trial) {
    const VertexId n = static_cast<VertexId>(3 + uniform_below(rng, 12));
    const auto mask = random_mask(rng, n, 0.3 + 0.5 * uniform_unit(rng));
    const Coefficient c = relative_clustering(full_graph(mask), mask);
    if (c.defined()) REQUIRE(c == Coefficient::ratio(1, 1));
  }
}

TEST_CASE("coefficients are isomorphism invariant") {
  auto rng = make_engine(Seed{35});
  for (int trial = 0; trial < 25; ++trial) {
    const VertexId n = 10;
    const auto mask = random_mask(rng, n, 0.5);
    const Graph g = random_subgraph(rng, mask, 0.6);
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    std::vector<VertexPair> mapped_edges;
    for (const auto& e : g.edges()) mapped_edges.push_back({perm[e.a], perm[e.b]});
    std::vector<VertexPair> mapped_pairs;
    for (const auto& p : mask.pairs()) mapped_pairs.push_back({perm[p.a], perm[p.b]});
    const Graph h = build_graph(n, mapped_edges);
    const auto mask2 = CapacityMask::from_pairs(n, mapped_pairs);
    REQUIRE(global_clustering(h) == global_clustering(g));
    REQUIRE(relative_clustering(h, mask2) == relative_clustering(g, mask));
    REQUIRE(average_local_clustering(h) == average_local_clustering(g));
    for (VertexId v = 0; v < n; ++v) {
      REQUIRE(local_clustering(h, perm[v]) == local_clustering(g, v));
      REQUIRE(relative_local_clustering(h, mask2, perm[v]) ==
              relative_local_clustering(g, mask, v));
    }
  }
}

TEST_CASE("closing an open allowed triple never lowers the closed count") {
  auto rng = make_engine(Seed{36});
  int exercised = 0;
  for (int trial = 0; trial < 60 && exercised < 25; ++trial) {
    const VertexId n = static_cast<VertexId>(4 + uniform_below(rng, 6));
    const auto mask = random_mask(rng, n, 0.7);
    const Graph g = random_subgraph(rng, mask, 0.4);
    const auto before = triangle_census(g, mask);
    if (before.open_allowed == 0) continue;
    // find one open allowed triple and add its missing edge
    VertexPair missing{0, 0};
    bool found = false;
    for (VertexId a = 0; a < n && !found; ++a)
      for (VertexId b = a + 1; b < n && !found; ++b)
        for (VertexId c = b + 1; c < n && !found; ++c) {
          if (!mask.allowed(a, b) || !mask.allowed(a, c) || !mask.allowed(b, c)) continue;
          const int eab = g.has_edge(a, b) ? 1 : 0;
          const int eac = g.has_edge(a, c) ? 1 : 0;
          const int ebc = g.has_edge(b, c) ? 1 : 0;
          if (eab + eac + ebc != 2) continue;
          missing = eab == 0 ? VertexPair{a, b} : (eac == 0 ? VertexPair{a, c} : VertexPair{b, c});
          found = true;
        }
    REQUIRE(found);
    std::vector<VertexPair> edges(g.edges().begin(), g.edges().end());
    edges.push_back(missing);
    const auto after = triangle_census(build_graph(n, edges), mask);
    REQUIRE(after.closed_allowed > before.closed_allowed);
    ++exercised;
  }
  REQUIRE(exercised >= 10);
}

TEST_CASE("neighborhood edge count matches a pairwise scan") {
  auto rng = make_engine(Seed{37});
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(rng, 12, 0.4);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto nbrs = g.neighbors_of(v);
      Count expected = 0;
      for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
          if (g.has_edge(nbrs[i], nbrs[j])) ++expected;
      REQUIRE(neighborhood_edge_count(g, v) == expected);
    }
  }
}

TEST_CASE("coefficient range invariant") {
  auto rng = make_engine(Seed{38});
  for (int trial = 0; trial < 40; ++trial) {
    const VertexId n = static_cast<VertexId>(2 + uniform_below(rng, 10));
    const auto mask = random_mask(rng, n, 0.6);
    const Graph g = random_subgraph(rng, mask, 0.5);
    for (const Coefficient c :
         {global_clustering(g), relative_clustering(g, mask), average_local_clustering(g)}) {
      if (!c.defined()) continue;
      REQUIRE(c.numerator() <= c.denominator());
    }
  }
}

TEST_CASE("vertex arguments are range checked") {
  const Graph g = hospital_graph();
  REQUIRE_THROWS_AS(local_clustering(g, 5), VertexOutOfRangeError);
  REQUIRE_THROWS_AS(relative_local_clustering(g, hospital_mask(), 5), VertexOutOfRangeError);
  REQUIRE_THROWS_AS(relative_local_clustering(g, complete_mask(4), 0),
                    DimensionMismatchError);
  REQUIRE_THROWS_AS(neighborhood_edge_count(g, 5), VertexOutOfRangeError);
}
