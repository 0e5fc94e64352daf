#pragma once

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "relcc/metrics.hpp"
#include "relcc/model.hpp"

namespace relcc {

// Closed-form expectations for the allowed-triangle classification when every
// allowed pair carries an independent Bernoulli(p) edge: closed subsets arrive
// at rate p^3, open ones at 3 p^2 (1 - p).
struct ExpectedCounts {
  double p = 0.0;
  Count allowed_triangles = 0;
  double expected_closed = 0.0;
  double expected_open = 0.0;
};

inline ExpectedCounts expected_allowed_counts(Count allowed_triangles, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParamsError("edge probability must lie in [0, 1]");
  const double t = static_cast<double>(allowed_triangles);
  return {p, allowed_triangles, t * p * p * p, t * 3.0 * p * p * (1.0 - p)};
}

struct ReplicateResult {
  double p = 0.0;
  Count replicate_index = 0;
  Coefficient c_global;
  Coefficient c_relative;
  Coefficient c_prime;
  Count n_vertices = 0;
  Count n_edges = 0;
  Count n_allowed_pairs = 0;
  TriangleCensus census;
  Count allowed_wedges = 0;

  friend bool operator==(const ReplicateResult&, const ReplicateResult&) = default;
};

// Samples one affiliation + network pair and computes every coefficient from a
// single census. Replicate i draws from derive_seed(seed, i), with separate
// sub-streams for the affiliation and the network, so results do not depend on
// evaluation order.
inline ReplicateResult run_replicate(const ModelParams& params, double p,
                                     Count replicate_index, Seed seed) {
  const Seed base = derive_seed(seed, replicate_index);
  const auto affiliation = sample_affiliation(params, derive_seed(base, 0));
  const auto mask = capacity_from_affiliation(affiliation);
  const auto network = sample_network(mask, p, derive_seed(base, 1));

  ReplicateResult result;
  result.p = p;
  result.replicate_index = replicate_index;
  result.census = triangle_census(network, mask);
  result.allowed_wedges = allowed_wedge_count(mask);
  result.c_global = Coefficient::ratio(
      checked_mul(3, result.census.triangles, "triangle count"), result.census.wedges);
  const Count closed3 = checked_mul(3, result.census.closed_allowed, "closed count");
  result.c_relative = Coefficient::ratio(closed3, checked_add(closed3, result.census.open_allowed));
  result.c_prime = Coefficient::ratio(
      checked_mul(3, result.census.allowed_triangles, "allowed triangle count"),
      result.allowed_wedges);
  result.n_vertices = network.vertex_count();
  result.n_edges = network.edge_count();
  result.n_allowed_pairs = mask.pair_count();
  return result;
}

struct ExperimentConfig {
  ModelParams params;
  std::vector<double> p_values;
  Count replicates = 1;
  Seed seed;
  unsigned threads = 1;
};

// Per-p summary. Coefficient statistics are over replicates where the
// coefficient is defined; an empty optional means no such replicate (or fewer
// than two, for standard deviations).
struct SweepCellAggregate {
  double p = 0.0;
  Count replicates = 0;
  std::optional<double> mean_c;
  std::optional<double> sd_c;
  Count undefined_c = 0;
  std::optional<double> mean_cr;
  std::optional<double> sd_cr;
  Count undefined_cr = 0;
  std::optional<double> mean_cprime;
  Count undefined_cprime = 0;
  std::optional<double> p_times_mean_cprime;
  double mean_vertices = 0.0;
  double mean_edges = 0.0;
  double mean_allowed_pairs = 0.0;
  double mean_triangles = 0.0;
  double mean_wedges = 0.0;
  double mean_closed_allowed = 0.0;
  double mean_open_allowed = 0.0;
  double mean_allowed_triangles = 0.0;

  friend bool operator==(const SweepCellAggregate&, const SweepCellAggregate&) = default;
};

struct SweepResult {
  std::vector<ReplicateResult> replicates;  // grouped by p, replicate ascending
  std::vector<SweepCellAggregate> aggregates;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

namespace detail {

template <typename Extract>
inline void summarize(std::span<const ReplicateResult> cell, Extract&& extract,
                      std::optional<double>& mean, std::optional<double>* sd,
                      Count& undefined) {
  std::vector<double> values;
  values.reserve(cell.size());
  for (const auto& r : cell) {
    const Coefficient& c = extract(r);
    if (c.defined()) values.push_back(c.value());
    else ++undefined;
  }
  if (values.empty()) return;
  double sum = 0.0;
  for (const double v : values) sum += v;
  mean = sum / static_cast<double>(values.size());
  if (sd != nullptr && values.size() >= 2) {
    double squares = 0.0;
    for (const double v : values) squares += (v - *mean) * (v - *mean);
    *sd = std::sqrt(squares / static_cast<double>(values.size() - 1));
  }
}

inline SweepCellAggregate aggregate_cell(double p, std::span<const ReplicateResult> cell) {
  SweepCellAggregate agg;
  agg.p = p;
  agg.replicates = cell.size();
  summarize(cell, [](const ReplicateResult& r) -> const Coefficient& { return r.c_global; },
            agg.mean_c, &agg.sd_c, agg.undefined_c);
  summarize(cell, [](const ReplicateResult& r) -> const Coefficient& { return r.c_relative; },
            agg.mean_cr, &agg.sd_cr, agg.undefined_cr);
  summarize(cell, [](const ReplicateResult& r) -> const Coefficient& { return r.c_prime; },
            agg.mean_cprime, nullptr, agg.undefined_cprime);
  if (agg.mean_cprime) agg.p_times_mean_cprime = p * *agg.mean_cprime;
  const double count = static_cast<double>(cell.size());
  for (const auto& r : cell) {
    agg.mean_vertices += static_cast<double>(r.n_vertices) / count;
    agg.mean_edges += static_cast<double>(r.n_edges) / count;
    agg.mean_allowed_pairs += static_cast<double>(r.n_allowed_pairs) / count;
    agg.mean_triangles += static_cast<double>(r.census.triangles) / count;
    agg.mean_wedges += static_cast<double>(r.census.wedges) / count;
    agg.mean_closed_allowed += static_cast<double>(r.census.closed_allowed) / count;
    agg.mean_open_allowed += static_cast<double>(r.census.open_allowed) / count;
    agg.mean_allowed_triangles += static_cast<double>(r.census.allowed_triangles) / count;
  }
  return agg;
}

}  // namespace detail

// Runs every (p, replicate) cell. Work may be spread over threads; results and
// aggregates are identical for any thread count because each replicate is a
// pure function of (params, p, index, seed).
inline SweepResult run_sweep(const ExperimentConfig& config) {
  validate(config.params);
  if (config.replicates < 1) throw InvalidParamsError("replicates must be at least 1");
  if (config.p_values.empty()) throw InvalidParamsError("at least one p value is required");
  for (const double p : config.p_values)
    if (!(p >= 0.0 && p <= 1.0))
      throw InvalidParamsError("edge probability must lie in [0, 1]");

  const std::size_t total =
      config.p_values.size() * static_cast<std::size_t>(config.replicates);
  SweepResult result;
  result.replicates.resize(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= total) return;
      const std::size_t cell = index / config.replicates;
      const Count replicate = index % config.replicates;
      try {
        result.replicates[index] =
            run_replicate(config.params, config.p_values[cell], replicate, config.seed);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  const unsigned thread_count =
      std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(total)));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t cell = 0; cell < config.p_values.size(); ++cell) {
    const std::span<const ReplicateResult> slice(
        result.replicates.data() + cell * config.replicates, config.replicates);
    result.aggregates.push_back(detail::aggregate_cell(config.p_values[cell], slice));
  }
  return result;
}

// Definition-literal census over every 3-vertex subset, sharing no code with
// the production kernels. Wedges are recovered from per-subset edge counts
// (a subset with 2 edges holds one wedge, a triangle holds three).
inline TriangleCensus oracle_census(const Graph& g, const CapacityMask& mask,
                                    VertexId size_limit = 12) {
  if (g.vertex_count() != mask.vertex_count())
    throw DimensionMismatchError(g.vertex_count(), mask.vertex_count());
  if (g.vertex_count() > size_limit)
    throw SizeLimitError("oracle census is limited to " + std::to_string(size_limit) +
                         " vertices");
  std::set<std::pair<VertexId, VertexId>> edges;
  std::set<std::pair<VertexId, VertexId>> allowed;
  for (const auto& e : g.edges()) edges.emplace(e.a, e.b);
  for (const auto& p : mask.pairs()) allowed.emplace(p.a, p.b);
  const auto has = [](const std::set<std::pair<VertexId, VertexId>>& s, VertexId x,
                      VertexId y) { return s.count({x, y}) != 0; };

  TriangleCensus census;
  const VertexId n = g.vertex_count();
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      for (VertexId c = b + 1; c < n; ++c) {
        const int present = (has(edges, a, b) ? 1 : 0) + (has(edges, a, c) ? 1 : 0) +
                            (has(edges, b, c) ? 1 : 0);
        if (present == 3) {
          ++census.triangles;
          census.wedges += 3;
        } else if (present == 2) {
          ++census.wedges;
        }
        if (has(allowed, a, b) && has(allowed, a, c) && has(allowed, b, c)) {
          ++census.allowed_triangles;
          if (present == 3) ++census.closed_allowed;
          else if (present == 2) ++census.open_allowed;
        }
      }
    }
  }
  return census;
}

struct OracleMismatch {
  Count instance = 0;
  VertexId vertices = 0;
  double mask_density = 0.0;
  double edge_density = 0.0;
};

struct OracleCheckReport {
  Count instances = 0;
  Count agreements = 0;
  std::optional<OracleMismatch> first_mismatch;

  bool all_agree() const { return agreements == instances; }
};

// Cross-checks the census kernels against the subset oracle on random
// instances. Mask and edge densities cycle through {0.2, 0.5, 0.8}; instances
// alternate between the dense and sparse kernels.
inline OracleCheckReport oracle_spot_check(Count instances, VertexId max_vertices,
                                           Seed seed) {
  if (max_vertices < 3) throw InvalidParamsError("oracle check needs at least 3 vertices");
  if (max_vertices > 12)
    throw InvalidParamsError("oracle check is limited to 12 vertices");
  static constexpr double kDensities[] = {0.2, 0.5, 0.8};
  OracleCheckReport report;
  report.instances = instances;
  for (Count i = 0; i < instances; ++i) {
    auto rng = make_engine(derive_seed(seed, i));
    const auto n =
        static_cast<VertexId>(3 + uniform_below(rng, static_cast<Count>(max_vertices) - 2));
    const double mask_density = kDensities[(i / 3) % 3];
    const double edge_density = kDensities[i % 3];
    std::vector<VertexPair> allowed;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        if (uniform_unit(rng) < mask_density) allowed.push_back({u, v});
    const auto mask = CapacityMask::from_pairs(n, allowed);
    std::vector<VertexPair> picked;
    for (const auto& pair : mask.pairs())
      if (uniform_unit(rng) < edge_density) picked.push_back(pair);
    const auto g = build_graph(n, picked);
    CensusOptions options;
    if (i % 2 == 1) options.dense_limit = 0;  // force the sparse kernel
    const auto fast = triangle_census(g, mask, options);
    const auto slow = oracle_census(g, mask, max_vertices);
    if (fast == slow) {
      ++report.agreements;
    } else if (!report.first_mismatch) {
      report.first_mismatch = OracleMismatch{i, n, mask_density, edge_density};
    }
  }
  return report;
}

}  // namespace relcc
