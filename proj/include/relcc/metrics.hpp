#pragma once

#include <bit>
#include <cstdint>

#include "relcc/capacity.hpp"
#include "relcc/coefficient.hpp"

namespace relcc {

// Joint triangle census of a network against a capacity mask.
//   triangles         3-vertex subsets with all 3 edges in the network
//   wedges            paths of length 2 in the network (sum of deg-choose-2)
//   allowed_triangles 3-vertex subsets whose 3 pairs are all allowed
//   closed_allowed    allowed subsets with all 3 edges present
//   open_allowed      allowed subsets with exactly 2 edges present
struct TriangleCensus {
  Count triangles = 0;
  Count wedges = 0;
  Count closed_allowed = 0;
  Count open_allowed = 0;
  Count allowed_triangles = 0;

  friend bool operator==(const TriangleCensus&, const TriangleCensus&) = default;
};

struct CensusOptions {
  // Reject networks holding edges the mask forbids.
  bool validate = true;
  // Graphs up to this many vertices use the bitset kernel; larger ones fall
  // back to sorted-adjacency merging. Tests force either kernel through this.
  VertexId dense_limit = 8192;
};

namespace detail {

// Square symmetric bit matrix, one 64-bit word row stripe per vertex.
class BitMatrix {
public:
  explicit BitMatrix(VertexId n)
      : words_(n == 0 ? 0 : (static_cast<std::size_t>(n) + 63) / 64),
        bits_(static_cast<std::size_t>(n) * words_, 0) {}

  void set_pair(VertexId a, VertexId b) {
    bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
    bits_[b * words_ + a / 64] |= std::uint64_t{1} << (a % 64);
  }

  bool test(VertexId a, VertexId b) const {
    return (row(a)[b / 64] >> (b % 64)) & 1u;
  }

  const std::uint64_t* row(VertexId a) const { return bits_.data() + a * words_; }
  std::size_t words() const { return words_; }

private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

inline BitMatrix pair_bits(VertexId n, std::span<const VertexPair> pairs) {
  BitMatrix m(n);
  for (const auto& p : pairs) m.set_pair(p.a, p.b);
  return m;
}

// Calls visit(c) for every c > floor set in both rows, ascending.
template <typename Visit>
inline void visit_common_above(const std::uint64_t* ra, const std::uint64_t* rb,
                               std::size_t words, VertexId floor, Visit&& visit) {
  const std::size_t start = static_cast<std::size_t>(floor) + 1;
  std::size_t w = start / 64;
  unsigned offset = static_cast<unsigned>(start % 64);
  for (; w < words; ++w) {
    std::uint64_t bits = ra[w] & rb[w];
    if (offset != 0) {
      bits &= ~std::uint64_t{0} << offset;
      offset = 0;
    }
    while (bits != 0) {
      visit(static_cast<VertexId>(w * 64 + static_cast<unsigned>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
}

inline Count count_common_above(const std::uint64_t* ra, const std::uint64_t* rb,
                                std::size_t words, VertexId floor) {
  const std::size_t start = static_cast<std::size_t>(floor) + 1;
  std::size_t w = start / 64;
  unsigned offset = static_cast<unsigned>(start % 64);
  Count total = 0;
  for (; w < words; ++w) {
    std::uint64_t bits = ra[w] & rb[w];
    if (offset != 0) {
      bits &= ~std::uint64_t{0} << offset;
      offset = 0;
    }
    total += static_cast<Count>(std::popcount(bits));
  }
  return total;
}

// Merge walk over two sorted neighbor lists, visiting common entries > floor.
template <typename Visit>
inline void visit_common_above_sparse(std::span<const VertexId> xs,
                                      std::span<const VertexId> ys, VertexId floor,
                                      Visit&& visit) {
  auto ix = std::upper_bound(xs.begin(), xs.end(), floor);
  auto iy = std::upper_bound(ys.begin(), ys.end(), floor);
  while (ix != xs.end() && iy != ys.end()) {
    if (*ix < *iy) {
      ++ix;
    } else if (*iy < *ix) {
      ++iy;
    } else {
      visit(*ix);
      ++ix;
      ++iy;
    }
  }
}

}  // namespace detail

inline Count triangle_count(const Graph& g, const CensusOptions& options = {}) {
  Count total = 0;
  if (g.vertex_count() <= options.dense_limit) {
    const auto bits = detail::pair_bits(g.vertex_count(), g.edges());
    for (const auto& e : g.edges())
      total += detail::count_common_above(bits.row(e.a), bits.row(e.b), bits.words(), e.b);
  } else {
    for (const auto& e : g.edges())
      detail::visit_common_above_sparse(g.neighbors_of(e.a), g.neighbors_of(e.b), e.b,
                                        [&](VertexId) { ++total; });
  }
  return total;
}

// Enumerates mask-allowed 3-vertex subsets once each and classifies them by
// how many of their edges the network holds. Network triangles are counted by
// per-edge neighbor intersection over the same kernel.
inline TriangleCensus triangle_census(const Graph& g, const CapacityMask& mask,
                                      const CensusOptions& options = {}) {
  if (g.vertex_count() != mask.vertex_count())
    throw DimensionMismatchError(g.vertex_count(), mask.vertex_count());
  if (options.validate) {
    auto report = validate_against(g, mask);
    if (!report.ok()) throw MaskViolationError(std::move(report.violations));
  }
  TriangleCensus census;
  census.wedges = wedge_count(g);
  const VertexId n = g.vertex_count();
  if (n <= options.dense_limit) {
    const auto network_bits = detail::pair_bits(n, g.edges());
    const auto mask_bits = detail::pair_bits(n, mask.pairs());
    for (const auto& e : g.edges())
      census.triangles += detail::count_common_above(network_bits.row(e.a),
                                                     network_bits.row(e.b),
                                                     network_bits.words(), e.b);
    for (const auto& p : mask.pairs()) {
      const int edge_ab = network_bits.test(p.a, p.b) ? 1 : 0;
      detail::visit_common_above(mask_bits.row(p.a), mask_bits.row(p.b), mask_bits.words(),
                                 p.b, [&](VertexId c) {
                                   ++census.allowed_triangles;
                                   const int present = edge_ab +
                                                       (network_bits.test(p.a, c) ? 1 : 0) +
                                                       (network_bits.test(p.b, c) ? 1 : 0);
                                   if (present == 3) ++census.closed_allowed;
                                   else if (present == 2) ++census.open_allowed;
                                 });
    }
  } else {
    for (const auto& e : g.edges())
      detail::visit_common_above_sparse(g.neighbors_of(e.a), g.neighbors_of(e.b), e.b,
                                        [&](VertexId) { ++census.triangles; });
    for (const auto& p : mask.pairs()) {
      const int edge_ab = g.has_edge(p.a, p.b) ? 1 : 0;
      detail::visit_common_above_sparse(mask.allowed_neighbors(p.a),
                                        mask.allowed_neighbors(p.b), p.b, [&](VertexId c) {
                                          ++census.allowed_triangles;
                                          const int present = edge_ab +
                                                              (g.has_edge(p.a, c) ? 1 : 0) +
                                                              (g.has_edge(p.b, c) ? 1 : 0);
                                          if (present == 3) ++census.closed_allowed;
                                          else if (present == 2) ++census.open_allowed;
                                        });
    }
  }
  return census;
}

// Number of network edges joining two neighbors of v.
inline Count neighborhood_edge_count(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) throw VertexOutOfRangeError(v, g.vertex_count());
  const auto nv = g.neighbors_of(v);
  Count total = 0;
  for (const VertexId u : nv)
    detail::visit_common_above_sparse(g.neighbors_of(u), nv, u, [&](VertexId) { ++total; });
  return total;
}

// Fraction of connected neighbor pairs at v. Undefined below degree 2.
inline Coefficient local_clustering(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) throw VertexOutOfRangeError(v, g.vertex_count());
  return Coefficient::ratio(neighborhood_edge_count(g, v), choose2(g.degree(v)));
}

// Transitivity: 3 * triangles / wedges. Undefined when the graph has no
// wedges.
inline Coefficient global_clustering(const Graph& g, const CensusOptions& options = {}) {
  return Coefficient::ratio(checked_mul(3, triangle_count(g, options), "triangle count"),
                            wedge_count(g));
}

// Triangle closure restricted to mask-allowed triples: closed / (closed +
// open), weighting closed subsets by their 3 wedges. Undefined when no
// allowed subset holds 2 or 3 edges.
inline Coefficient relative_clustering(const Graph& g, const CapacityMask& mask,
                                       const CensusOptions& options = {}) {
  const TriangleCensus census = triangle_census(g, mask, options);
  const Count closed3 = checked_mul(3, census.closed_allowed, "closed count");
  return Coefficient::ratio(closed3, checked_add(closed3, census.open_allowed));
}

// Local clustering at v over allowed neighbor pairs only. Callers are expected
// to hand in a network consistent with the mask.
inline Coefficient relative_local_clustering(const Graph& g, const CapacityMask& mask,
                                             VertexId v) {
  if (g.vertex_count() != mask.vertex_count())
    throw DimensionMismatchError(g.vertex_count(), mask.vertex_count());
  if (v >= g.vertex_count()) throw VertexOutOfRangeError(v, g.vertex_count());
  const auto nv = g.neighbors_of(v);
  Count allowed_pairs = 0;
  Count present = 0;
  for (std::size_t i = 0; i < nv.size(); ++i) {
    for (std::size_t j = i + 1; j < nv.size(); ++j) {
      if (!mask.allowed(nv[i], nv[j])) continue;
      ++allowed_pairs;
      if (g.has_edge(nv[i], nv[j])) ++present;
    }
  }
  return Coefficient::ratio(present, allowed_pairs);
}

// Exact mean of local clustering over vertices where it is defined.
inline Coefficient average_local_clustering(const Graph& g) {
  Count sum_num = 0;
  Count sum_den = 1;
  Count counted = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const Count possible = choose2(g.degree(v));
    if (possible == 0) continue;
    detail::add_fraction(sum_num, sum_den, neighborhood_edge_count(g, v), possible);
    ++counted;
  }
  if (counted == 0) return Coefficient::undefined();
  return Coefficient::ratio(sum_num, checked_mul(sum_den, counted, "clustering mean"));
}

}  // namespace relcc
