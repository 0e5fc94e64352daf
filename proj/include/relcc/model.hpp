#pragma once

#include <cmath>
#include <numeric>
#include <random>
#include <variant>

#include "relcc/capacity.hpp"

namespace relcc {

// Seeds are explicit everywhere. Sub-streams are derived with splitmix64 so a
// replicate's draws depend only on (master seed, stream id), never on
// execution order.
struct Seed {
  std::uint64_t value = 0;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr Seed derive_seed(Seed master, std::uint64_t stream) {
  return Seed{splitmix64(master.value ^ splitmix64(stream ^ 0x6a09e667f3bcc909ull))};
}

using RandomEngine = std::mt19937_64;

inline RandomEngine make_engine(Seed seed) { return RandomEngine(seed.value); }

// Uniform double in [0, 1) built from the top 53 bits, so draws are identical
// across standard library implementations.
inline double uniform_unit(RandomEngine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(RandomEngine& rng, std::uint64_t bound) {
  if (bound == 0) throw InvalidParamsError("uniform_below requires a positive bound");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t draw = rng();
    if (draw >= threshold) return draw % bound;
  }
}

// Each (individual, group) membership is an independent Bernoulli trial.
struct BernoulliMembership {
  double probability = 0.0;
};

// Each individual joins a uniform random subset of exactly this many groups.
struct FixedMembership {
  VertexId groups_per_individual = 1;
};

using MembershipRule = std::variant<BernoulliMembership, FixedMembership>;

struct ModelParams {
  VertexId individuals = 0;
  VertexId groups = 0;
  MembershipRule membership = BernoulliMembership{};
  double edge_prob = 0.0;
};

inline void validate(const ModelParams& params) {
  if (!(params.edge_prob >= 0.0 && params.edge_prob <= 1.0))
    throw InvalidParamsError("edge probability must lie in [0, 1]");
  if (const auto* bernoulli = std::get_if<BernoulliMembership>(&params.membership)) {
    if (!(bernoulli->probability >= 0.0 && bernoulli->probability <= 1.0))
      throw InvalidParamsError("membership probability must lie in [0, 1]");
  } else {
    const auto& fixed = std::get<FixedMembership>(params.membership);
    if (fixed.groups_per_individual < 1)
      throw InvalidParamsError("groups per individual must be at least 1");
    if (fixed.groups_per_individual > params.groups)
      throw InvalidParamsError("groups per individual exceeds the number of groups");
  }
}

// Draws the bipartite membership structure. Iteration order is fixed
// (individuals outer, groups inner), so output is a pure function of the seed.
inline AffiliationBipartite sample_affiliation(const ModelParams& params, Seed seed) {
  validate(params);
  auto rng = make_engine(seed);
  std::vector<Membership> memberships;
  if (const auto* bernoulli = std::get_if<BernoulliMembership>(&params.membership)) {
    for (VertexId individual = 0; individual < params.individuals; ++individual)
      for (VertexId group = 0; group < params.groups; ++group)
        if (uniform_unit(rng) < bernoulli->probability)
          memberships.push_back({individual, group});
  } else {
    const VertexId k = std::get<FixedMembership>(params.membership).groups_per_individual;
    std::vector<VertexId> pool(params.groups);
    std::vector<VertexId> chosen(k);
    for (VertexId individual = 0; individual < params.individuals; ++individual) {
      std::iota(pool.begin(), pool.end(), VertexId{0});
      for (VertexId pick = 0; pick < k; ++pick) {
        const auto j = pick + uniform_below(rng, params.groups - pick);
        std::swap(pool[pick], pool[j]);
        chosen[pick] = pool[pick];
      }
      std::sort(chosen.begin(), chosen.end());
      for (const VertexId group : chosen) memberships.push_back({individual, group});
    }
  }
  return build_affiliation(params.individuals, params.groups, memberships);
}

// One Bernoulli(edge_prob) trial per allowed pair, in canonical pair order.
// Forbidden pairs never gain an edge and consume no randomness.
inline Graph sample_network(const CapacityMask& mask, double edge_prob, Seed seed) {
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
    throw InvalidParamsError("edge probability must lie in [0, 1]");
  auto rng = make_engine(seed);
  std::vector<VertexPair> edges;
  for (const auto& pair : mask.pairs())
    if (uniform_unit(rng) < edge_prob) edges.push_back(pair);
  return build_graph(mask.vertex_count(), edges);
}

}  // namespace relcc
