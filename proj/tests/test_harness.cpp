#include "support.hpp"

#include <cmath>

using namespace relcc;
using test_support::hospital_graph;
using test_support::hospital_mask;

namespace {

ModelParams small_params() {
  ModelParams params;
  params.individuals = 60;
  params.groups = 6;
  params.membership = BernoulliMembership{0.2};
  params.edge_prob = 0.5;
  return params;
}

}  // namespace

TEST_CASE("expected allowed counts at frozen points") {
  const auto all_closed = expected_allowed_counts(100, 1.0);
  REQUIRE(all_closed.expected_closed == 100.0);
  REQUIRE(all_closed.expected_open == 0.0);

  const auto half = expected_allowed_counts(100, 0.5);
  REQUIRE(half.expected_closed == 12.5);
  REQUIRE(half.expected_open == 37.5);
  // the implied coefficient is exactly p
  REQUIRE(3.0 * half.expected_closed / (3.0 * half.expected_closed + half.expected_open) ==
          0.5);

  const auto none = expected_allowed_counts(0, 0.7);
  REQUIRE(none.expected_closed == 0.0);
  REQUIRE(none.expected_open == 0.0);

  REQUIRE_THROWS_AS(expected_allowed_counts(10, 1.5), InvalidParamsError);
}

TEST_CASE("expected counts imply a ratio of exactly p") {
  for (const double p : {0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9}) {
    const auto e = expected_allowed_counts(977, p);
    const double ratio = 3.0 * e.expected_closed / (3.0 * e.expected_closed + e.expected_open);
    REQUIRE(std::abs(ratio - p) < 1e-12);
  }
}

TEST_CASE("run_replicate coefficients derive from its own census") {
  const auto params = small_params();
  const auto result = run_replicate(params, 0.5, 3, Seed{100});

  // reconstruct the same draw and compare against direct computation
  const Seed base = derive_seed(Seed{100}, 3);
  const auto affiliation = sample_affiliation(params, derive_seed(base, 0));
  const auto mask = capacity_from_affiliation(affiliation);
  const auto network = sample_network(mask, 0.5, derive_seed(base, 1));
  REQUIRE(result.census == triangle_census(network, mask));
  REQUIRE(result.c_global == global_clustering(network));
  REQUIRE(result.c_relative == relative_clustering(network, mask));
  REQUIRE(result.c_prime == global_clustering(full_graph(mask)));
  REQUIRE(result.n_vertices == network.vertex_count());
  REQUIRE(result.n_edges == network.edge_count());
  REQUIRE(result.n_allowed_pairs == mask.pair_count());
  REQUIRE(result.allowed_wedges == wedge_count(full_graph(mask)));
}

TEST_CASE("replicate at p=1 recovers the full graph") {
  const auto result = run_replicate(small_params(), 1.0, 0, Seed{101});
  REQUIRE(result.n_edges == result.n_allowed_pairs);
  REQUIRE(result.c_relative == Coefficient::ratio(1, 1));
  REQUIRE(result.c_global == result.c_prime);
  REQUIRE(result.census.open_allowed == 0);
  REQUIRE(result.census.closed_allowed == result.census.allowed_triangles);
}

TEST_CASE("replicate at p=0 is edgeless and undefined") {
  const auto result = run_replicate(small_params(), 0.0, 0, Seed{102});
  REQUIRE(result.n_edges == 0);
  REQUIRE_FALSE(result.c_global.defined());
  REQUIRE_FALSE(result.c_relative.defined());
  REQUIRE(result.census.closed_allowed == 0);
  REQUIRE(result.census.open_allowed == 0);
}

TEST_CASE("replicates differ across indices but not across calls") {
  const auto params = small_params();
  const auto a = run_replicate(params, 0.5, 0, Seed{103});
  const auto b = run_replicate(params, 0.5, 0, Seed{103});
  REQUIRE(a == b);
  const auto c = run_replicate(params, 0.5, 1, Seed{103});
  REQUIRE_FALSE(a == c);
}

TEST_CASE("run_sweep is deterministic for any thread count") {
  ExperimentConfig config;
  config.params = small_params();
  config.p_values = {0.2, 0.5, 0.8};
  config.replicates = 6;
  config.seed = Seed{104};
  config.threads = 1;
  const auto serial = run_sweep(config);
  REQUIRE(serial.replicates.size() == 18);
  REQUIRE(serial.aggregates.size() == 3);
  REQUIRE(run_sweep(config) == serial);
  config.threads = 4;
  REQUIRE(run_sweep(config) == serial);

  // replicate rows are grouped by p in input order
  for (std::size_t cell = 0; cell < 3; ++cell)
    for (std::size_t r = 0; r < 6; ++r) {
      const auto& row = serial.replicates[cell * 6 + r];
      REQUIRE(row.p == config.p_values[cell]);
      REQUIRE(row.replicate_index == r);
    }
}

TEST_CASE("sweep aggregates summarize their cells") {
  ExperimentConfig config;
  config.params = small_params();
  config.p_values = {0.5};
  config.replicates = 8;
  config.seed = Seed{105};
  const auto result = run_sweep(config);
  const auto& agg = result.aggregates.at(0);
  REQUIRE(agg.replicates == 8);
  REQUIRE(agg.undefined_cr == 0);

  double mean = 0.0;
  for (const auto& r : result.replicates) mean += r.c_relative.value() / 8.0;
  REQUIRE(std::abs(*agg.mean_cr - mean) < 1e-12);
  double sq = 0.0;
  for (const auto& r : result.replicates)
    sq += (r.c_relative.value() - mean) * (r.c_relative.value() - mean);
  REQUIRE(std::abs(*agg.sd_cr - std::sqrt(sq / 7.0)) < 1e-12);
  REQUIRE(*agg.p_times_mean_cprime == 0.5 * *agg.mean_cprime);

  double mean_edges = 0.0;
  for (const auto& r : result.replicates) mean_edges += static_cast<double>(r.n_edges) / 8.0;
  REQUIRE(std::abs(agg.mean_edges - mean_edges) < 1e-9);
}

TEST_CASE("sweep cells with no defined values report NA-style aggregates") {
  ExperimentConfig config;
  config.params = small_params();
  config.p_values = {0.0};
  config.replicates = 4;
  config.seed = Seed{106};
  const auto result = run_sweep(config);
  const auto& agg = result.aggregates.at(0);
  REQUIRE_FALSE(agg.mean_c.has_value());
  REQUIRE_FALSE(agg.mean_cr.has_value());
  REQUIRE(agg.undefined_c == 4);
  REQUIRE(agg.undefined_cr == 4);
  // the allowed universe is nonempty, so C' stays defined
  REQUIRE(agg.mean_cprime.has_value());
}

TEST_CASE("run_sweep validates its configuration") {
  ExperimentConfig config;
  config.params = small_params();
  config.p_values = {};
  REQUIRE_THROWS_AS(run_sweep(config), InvalidParamsError);
  config.p_values = {0.5};
  config.replicates = 0;
  REQUIRE_THROWS_AS(run_sweep(config), InvalidParamsError);
  config.replicates = 1;
  config.p_values = {1.2};
  REQUIRE_THROWS_AS(run_sweep(config), InvalidParamsError);
}

TEST_CASE("oracle census on frozen instances") {
  const auto k3 = test_support::graph_of(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto census = oracle_census(k3, complete_mask(3));
  REQUIRE(census.triangles == 1);
  REQUIRE(census.wedges == 3);
  REQUIRE(census.closed_allowed == 1);
  REQUIRE(census.open_allowed == 0);
  REQUIRE(census.allowed_triangles == 1);

  const auto hospital = oracle_census(hospital_graph(), hospital_mask());
  REQUIRE(hospital == TriangleCensus{2, 10, 2, 0, 2});
}

TEST_CASE("oracle census guards its limits") {
  const Graph big = build_graph(13, {});
  REQUIRE_THROWS_AS(oracle_census(big, complete_mask(13)), SizeLimitError);
  REQUIRE_NOTHROW(oracle_census(build_graph(13, {}), complete_mask(13), 13));
  REQUIRE_THROWS_AS(oracle_census(hospital_graph(), complete_mask(4)),
                    DimensionMismatchError);
}

TEST_CASE("oracle spot check agrees on a quick batch") {
  const auto report = oracle_spot_check(200, 8, Seed{7});
  REQUIRE(report.instances == 200);
  REQUIRE(report.agreements == 200);
  REQUIRE(report.all_agree());
  REQUIRE_FALSE(report.first_mismatch.has_value());
  REQUIRE_THROWS_AS(oracle_spot_check(10, 2, Seed{7}), InvalidParamsError);
  REQUIRE_THROWS_AS(oracle_spot_check(10, 13, Seed{7}), InvalidParamsError);
}

TEST_CASE("relative clustering tracks p on a small model") {
  ExperimentConfig config;
  config.params = small_params();
  config.p_values = {0.5};
  config.replicates = 10;
  config.seed = Seed{107};
  const auto result = run_sweep(config);
  const auto& agg = result.aggregates.at(0);
  REQUIRE(agg.mean_cr.has_value());
  REQUIRE(std::abs(*agg.mean_cr - 0.5) < 0.15);
}
