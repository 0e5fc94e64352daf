#pragma once

#include <span>
#include <vector>

#include "relcc/graph.hpp"

namespace relcc {

struct Membership {
  VertexId individual = 0;
  VertexId group = 0;

  friend constexpr bool operator==(const Membership&, const Membership&) = default;
  friend constexpr auto operator<=>(const Membership&, const Membership&) = default;
};

struct AffiliationStats {
  Count duplicates_dropped = 0;
};

// Bipartite individual-group incidence. Memberships are stored sorted and
// unique, with CSR views in both directions.
class AffiliationBipartite {
public:
  AffiliationBipartite() = default;

  VertexId individual_count() const { return individuals_; }
  VertexId group_count() const { return groups_; }
  Count membership_count() const { return memberships_.size(); }
  std::span<const Membership> memberships() const { return memberships_; }

  std::span<const VertexId> groups_of(VertexId individual) const {
    assert(individual < individuals_);
    return {by_individual_.data() + individual_offsets_[individual],
            by_individual_.data() + individual_offsets_[individual + 1]};
  }

  std::span<const VertexId> members_of(VertexId group) const {
    assert(group < groups_);
    return {by_group_.data() + group_offsets_[group],
            by_group_.data() + group_offsets_[group + 1]};
  }

  friend bool operator==(const AffiliationBipartite&, const AffiliationBipartite&) = default;

private:
  friend AffiliationBipartite build_affiliation(VertexId, VertexId,
                                                std::span<const Membership>, BuildMode,
                                                AffiliationStats*);

  AffiliationBipartite(VertexId individuals, VertexId groups,
                       std::vector<Membership> memberships)
      : individuals_(individuals), groups_(groups), memberships_(std::move(memberships)) {
    individual_offsets_.assign(static_cast<std::size_t>(individuals_) + 1, 0);
    group_offsets_.assign(static_cast<std::size_t>(groups_) + 1, 0);
    for (const auto& m : memberships_) {
      ++individual_offsets_[m.individual + 1];
      ++group_offsets_[m.group + 1];
    }
    for (std::size_t i = 1; i < individual_offsets_.size(); ++i)
      individual_offsets_[i] += individual_offsets_[i - 1];
    for (std::size_t i = 1; i < group_offsets_.size(); ++i)
      group_offsets_[i] += group_offsets_[i - 1];
    by_individual_.resize(memberships_.size());
    by_group_.resize(memberships_.size());
    std::vector<Count> icur(individual_offsets_.begin(), individual_offsets_.end() - 1);
    std::vector<Count> gcur(group_offsets_.begin(), group_offsets_.end() - 1);
    for (const auto& m : memberships_) {
      by_individual_[icur[m.individual]++] = m.group;
      by_group_[gcur[m.group]++] = m.individual;
    }
  }

  VertexId individuals_ = 0;
  VertexId groups_ = 0;
  std::vector<Membership> memberships_;
  std::vector<Count> individual_offsets_ = {0};
  std::vector<VertexId> by_individual_;
  std::vector<Count> group_offsets_ = {0};
  std::vector<VertexId> by_group_;
};

inline AffiliationBipartite build_affiliation(VertexId individuals, VertexId groups,
                                              std::span<const Membership> memberships,
                                              BuildMode mode = BuildMode::strict,
                                              AffiliationStats* stats = nullptr) {
  AffiliationStats local;
  std::vector<Membership> rows(memberships.begin(), memberships.end());
  for (const auto& m : rows) {
    if (m.individual >= individuals)
      throw VertexOutOfRangeError(m.individual, individuals, 0, "individual");
    if (m.group >= groups) throw VertexOutOfRangeError(m.group, groups, 0, "group");
  }
  std::sort(rows.begin(), rows.end());
  std::vector<Membership> unique_rows;
  unique_rows.reserve(rows.size());
  for (const auto& m : rows) {
    if (!unique_rows.empty() && unique_rows.back() == m) {
      if (mode == BuildMode::strict) throw DuplicateMembershipError(m.individual, m.group);
      ++local.duplicates_dropped;
      continue;
    }
    unique_rows.push_back(m);
  }
  if (stats != nullptr) *stats = local;
  return AffiliationBipartite(individuals, groups, std::move(unique_rows));
}

// Symmetric 0/1 edge-capacity relation over vertex pairs. A pair with
// capacity 1 is "allowed"; everything else is forbidden. Self-pairs are never
// allowed.
class CapacityMask {
public:
  CapacityMask() = default;

  // Builds from an explicit pair list. Pairs may repeat (set semantics) but
  // self-pairs and out-of-range indices are errors.
  static CapacityMask from_pairs(VertexId vertex_count, std::span<const VertexPair> pairs) {
    std::vector<VertexPair> canonical;
    canonical.reserve(pairs.size());
    for (const auto& p : pairs) {
      if (p.a >= vertex_count) throw VertexOutOfRangeError(p.a, vertex_count);
      if (p.b >= vertex_count) throw VertexOutOfRangeError(p.b, vertex_count);
      if (p.a == p.b) throw SelfLoopError(p.a);
      canonical.push_back(ordered_pair(p.a, p.b));
    }
    std::sort(canonical.begin(), canonical.end());
    canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
    return CapacityMask(Graph(vertex_count, std::move(canonical)));
  }

  VertexId vertex_count() const { return allowed_.vertex_count(); }
  Count pair_count() const { return allowed_.edge_count(); }
  std::span<const VertexPair> pairs() const { return allowed_.edges(); }

  bool allowed(VertexId u, VertexId v) const { return allowed_.has_edge(u, v); }
  Count allowed_degree(VertexId v) const { return allowed_.degree(v); }
  std::span<const VertexId> allowed_neighbors(VertexId v) const {
    return allowed_.neighbors_of(v);
  }

  friend bool operator==(const CapacityMask&, const CapacityMask&) = default;

private:
  friend Graph full_graph(const CapacityMask&);

  explicit CapacityMask(Graph allowed) : allowed_(std::move(allowed)) {}

  Graph allowed_;
};

// Projects shared group membership down to pair capacities: a pair of distinct
// individuals is allowed iff at least one group contains both.
inline CapacityMask capacity_from_affiliation(const AffiliationBipartite& affiliation) {
  std::vector<VertexPair> pairs;
  for (VertexId group = 0; group < affiliation.group_count(); ++group) {
    const auto members = affiliation.members_of(group);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        pairs.push_back({members[i], members[j]});  // member lists are sorted
  }
  return CapacityMask::from_pairs(affiliation.individual_count(), pairs);
}

// The graph holding exactly the allowed pairs as edges.
inline Graph full_graph(const CapacityMask& mask) { return mask.allowed_; }

// Mask allowing every pair of distinct vertices. Materializes all n*(n-1)/2
// pairs, so keep n modest.
inline CapacityMask complete_mask(VertexId vertex_count) {
  std::vector<VertexPair> pairs;
  pairs.reserve(choose2(vertex_count));
  for (VertexId u = 0; u < vertex_count; ++u)
    for (VertexId v = u + 1; v < vertex_count; ++v) pairs.push_back({u, v});
  return CapacityMask::from_pairs(vertex_count, pairs);
}

struct MaskValidation {
  std::vector<VertexPair> violations;

  bool ok() const { return violations.empty(); }
};

// Lists every network edge whose pair the mask forbids.
inline MaskValidation validate_against(const Graph& g, const CapacityMask& mask) {
  if (g.vertex_count() != mask.vertex_count())
    throw DimensionMismatchError(g.vertex_count(), mask.vertex_count());
  MaskValidation report;
  for (const auto& e : g.edges())
    if (!mask.allowed(e.a, e.b)) report.violations.push_back(e);
  return report;
}

// Wedge count of the full graph, without materializing it.
inline Count allowed_wedge_count(const CapacityMask& mask) {
  Count total = 0;
  for (VertexId v = 0; v < mask.vertex_count(); ++v)
    total = checked_add(total, choose2(mask.allowed_degree(v)), "wedge count");
  return total;
}

}  // namespace relcc
