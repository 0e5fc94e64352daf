#pragma once

#include <algorithm>
#include <cassert>
#include <span>
#include <vector>

#include "relcc/core.hpp"

namespace relcc {

enum class BuildMode { strict, lenient };

struct BuildStats {
  Count self_loops_dropped = 0;
  Count duplicate_edges_dropped = 0;
};

// Simple undirected graph on vertices 0..n-1. Immutable once built; edges are
// stored canonically (a < b, lexicographically sorted) next to a CSR adjacency
// whose neighbor lists are sorted ascending.
class Graph {
public:
  Graph() = default;

  VertexId vertex_count() const { return n_; }
  Count edge_count() const { return edges_.size(); }
  std::span<const VertexPair> edges() const { return edges_; }

  Count degree(VertexId v) const {
    assert(v < n_);
    return offsets_[v + 1] - offsets_[v];
  }

  std::span<const VertexId> neighbors_of(VertexId v) const {
    assert(v < n_);
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  bool has_edge(VertexId u, VertexId v) const {
    if (u == v || u >= n_ || v >= n_) return false;
    const auto nu = neighbors_of(u);
    const auto nv = neighbors_of(v);
    const auto& smaller = nu.size() <= nv.size() ? nu : nv;
    const VertexId target = nu.size() <= nv.size() ? v : u;
    return std::binary_search(smaller.begin(), smaller.end(), target);
  }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  friend Graph build_graph(VertexId, std::span<const VertexPair>, BuildMode, BuildStats*);
  friend class CapacityMask;

  // Requires edges canonical, sorted, unique, in range.
  Graph(VertexId n, std::vector<VertexPair> edges) : n_(n), edges_(std::move(edges)) {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.a + 1];
      ++offsets_[e.b + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adjacency_.resize(edges_.size() * 2);
    std::vector<Count> cursor(offsets_.begin(), offsets_.end() - 1);
    // Scanning canonical sorted edges fills every neighbor list in ascending
    // order: for vertex w, edges (u, w) with u < w all precede edges (w, x).
    for (const auto& e : edges_) {
      adjacency_[cursor[e.a]++] = e.b;
      adjacency_[cursor[e.b]++] = e.a;
    }
  }

  VertexId n_ = 0;
  std::vector<VertexPair> edges_;
  std::vector<Count> offsets_ = {0};
  std::vector<VertexId> adjacency_;
};

// Validates and canonicalizes an edge list. Input pairs may appear in either
// orientation and any order. Strict mode rejects self-loops and duplicates;
// lenient mode drops them and reports how many via stats.
inline Graph build_graph(VertexId vertex_count, std::span<const VertexPair> edge_list,
                         BuildMode mode = BuildMode::strict, BuildStats* stats = nullptr) {
  BuildStats local;
  std::vector<VertexPair> edges;
  edges.reserve(edge_list.size());
  for (const auto& e : edge_list) {
    if (e.a >= vertex_count) throw VertexOutOfRangeError(e.a, vertex_count);
    if (e.b >= vertex_count) throw VertexOutOfRangeError(e.b, vertex_count);
    if (e.a == e.b) {
      if (mode == BuildMode::strict) throw SelfLoopError(e.a);
      ++local.self_loops_dropped;
      continue;
    }
    edges.push_back(ordered_pair(e.a, e.b));
  }
  std::sort(edges.begin(), edges.end());
  std::vector<VertexPair> unique_edges;
  unique_edges.reserve(edges.size());
  for (const auto& e : edges) {
    if (!unique_edges.empty() && unique_edges.back() == e) {
      if (mode == BuildMode::strict) throw DuplicateEdgeError(e);
      ++local.duplicate_edges_dropped;
      continue;
    }
    unique_edges.push_back(e);
  }
  if (stats != nullptr) *stats = local;
  return Graph(vertex_count, std::move(unique_edges));
}

// Sorted neighbor set of one vertex, detached from the graph.
class Neighborhood {
public:
  Neighborhood(VertexId center, std::vector<VertexId> members)
      : center_(center), members_(std::move(members)) {}

  VertexId center() const { return center_; }
  Count degree() const { return members_.size(); }
  std::span<const VertexId> members() const { return members_; }

  bool contains(VertexId v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }

private:
  VertexId center_;
  std::vector<VertexId> members_;
};

inline Neighborhood neighbors(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) throw VertexOutOfRangeError(v, g.vertex_count());
  const auto span = g.neighbors_of(v);
  return Neighborhood(v, {span.begin(), span.end()});
}

inline Count wedge_count_at(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) throw VertexOutOfRangeError(v, g.vertex_count());
  return choose2(g.degree(v));
}

inline Count wedge_count(const Graph& g) {
  Count total = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    total = checked_add(total, choose2(g.degree(v)), "wedge count");
  return total;
}

}  // namespace relcc
