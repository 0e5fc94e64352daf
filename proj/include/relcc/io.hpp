#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "relcc/harness.hpp"

namespace relcc {

// Bidirectional vertex-id <-> label map. Ids are assigned by first appearance.
class LabelTable {
public:
  LabelTable() = default;

  static LabelTable identity(VertexId n) {
    LabelTable table;
    for (VertexId v = 0; v < n; ++v) table.intern(std::to_string(v));
    return table;
  }

  VertexId intern(std::string_view label) {
    if (const auto it = index_.find(label); it != index_.end()) return it->second;
    const auto id = static_cast<VertexId>(labels_.size());
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
  }

  std::optional<VertexId> find(std::string_view label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& label(VertexId v) const {
    if (v >= labels_.size()) throw VertexOutOfRangeError(v, labels_.size());
    return labels_[v];
  }

  VertexId size() const { return static_cast<VertexId>(labels_.size()); }

  bool is_identity() const {
    for (VertexId v = 0; v < size(); ++v)
      if (labels_[v] != std::to_string(v)) return false;
    return true;
  }

  friend bool operator==(const LabelTable&, const LabelTable&) = default;

private:
  std::vector<std::string> labels_;
  std::map<std::string, VertexId, std::less<>> index_;
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream stream(line);
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

inline std::optional<Count> parse_count(std::string_view token) {
  Count value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

inline void strip_comment(std::string& line) {
  if (const auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
}

}  // namespace detail

struct ParsedGraph {
  Graph graph;
  LabelTable labels;
  BuildStats stats;
};

// Text edge-list reader. Two dialects share one grammar:
//   - with a leading "n <count>" header, tokens are integer vertex ids in
//     [0, count), and isolated vertices exist by virtue of the header;
//   - without it, tokens are arbitrary whitespace-free labels, ids follow
//     first appearance, and a line holding a single label declares an
//     isolated vertex.
// '#' starts a comment. Strict mode rejects self-loops and repeated edges
// with their line number; lenient mode drops them and counts the drops.
inline ParsedGraph parse_edge_list(std::istream& in, BuildMode mode = BuildMode::strict) {
  std::string line;
  Count line_number = 0;
  bool saw_content = false;
  bool header_mode = false;
  VertexId declared = 0;
  LabelTable labels;
  std::vector<VertexPair> edges;
  std::set<VertexPair> seen;
  BuildStats stats;

  while (std::getline(in, line)) {
    ++line_number;
    detail::strip_comment(line);
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (!saw_content) {
      saw_content = true;
      if (tokens.size() == 2 && tokens[0] == "n") {
        const auto count = detail::parse_count(tokens[1]);
        if (!count)
          throw ParseError(line_number, "header vertex count must be a non-negative integer");
        if (*count > std::numeric_limits<VertexId>::max())
          throw SizeLimitError("vertex count " + tokens[1] + " exceeds the supported range");
        header_mode = true;
        declared = static_cast<VertexId>(*count);
        continue;
      }
    }

    VertexId endpoints[2];
    if (header_mode) {
      if (tokens.size() != 2)
        throw ParseError(line_number, "expected two vertex ids");
      for (int k = 0; k < 2; ++k) {
        const auto value = detail::parse_count(tokens[k]);
        if (!value)
          throw ParseError(line_number,
                           "vertex id must be a non-negative integer, got '" + tokens[k] + "'");
        if (*value >= declared) throw VertexOutOfRangeError(*value, declared, line_number);
        endpoints[k] = static_cast<VertexId>(*value);
      }
    } else {
      if (tokens.size() == 1) {
        labels.intern(tokens[0]);
        continue;
      }
      if (tokens.size() != 2)
        throw ParseError(line_number, "expected one or two tokens");
      endpoints[0] = labels.intern(tokens[0]);
      endpoints[1] = labels.intern(tokens[1]);
    }

    if (endpoints[0] == endpoints[1]) {
      if (mode == BuildMode::strict) throw SelfLoopError(endpoints[0], line_number);
      ++stats.self_loops_dropped;
      continue;
    }
    const auto pair = ordered_pair(endpoints[0], endpoints[1]);
    if (!seen.insert(pair).second) {
      if (mode == BuildMode::strict) throw DuplicateEdgeError(pair, line_number);
      ++stats.duplicate_edges_dropped;
      continue;
    }
    edges.push_back(pair);
  }

  const VertexId n = header_mode ? declared : labels.size();
  LabelTable table = header_mode ? LabelTable::identity(n) : std::move(labels);
  return {build_graph(n, edges), std::move(table), stats};
}

struct ParsedMembership {
  AffiliationBipartite affiliation;
  LabelTable individuals;
  LabelTable groups;
  Count duplicates_dropped = 0;
};

// Membership reader: one "individual group" pair per line, '#' comments,
// labels interned by first appearance. Repeated lines are dropped and
// counted, never an error.
inline ParsedMembership parse_membership(std::istream& in) {
  std::string line;
  Count line_number = 0;
  LabelTable individuals;
  LabelTable groups;
  std::vector<Membership> memberships;
  std::set<Membership> seen;
  Count duplicates = 0;

  while (std::getline(in, line)) {
    ++line_number;
    detail::strip_comment(line);
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2)
      throw ParseError(line_number, "expected an individual and a group token");
    const Membership m{individuals.intern(tokens[0]), groups.intern(tokens[1])};
    if (!seen.insert(m).second) {
      ++duplicates;
      continue;
    }
    memberships.push_back(m);
  }

  return {build_affiliation(individuals.size(), groups.size(), memberships),
          std::move(individuals), std::move(groups), duplicates};
}

namespace detail {

inline void require_writable_label(const std::string& label) {
  if (label.empty() || label.find_first_of(" \t\r\n") != std::string::npos ||
      label.front() == '#')
    throw InvalidParamsError("label '" + label + "' cannot be written to an edge list");
}

}  // namespace detail

// Inverse of parse_edge_list up to vertex renumbering: identity labels write
// the header dialect, anything else writes labeled lines plus single-token
// lines for isolated vertices.
inline void write_edge_list(std::ostream& out, const Graph& g, const LabelTable& labels) {
  if (labels.size() != g.vertex_count())
    throw DimensionMismatchError(labels.size(), g.vertex_count());
  if (labels.is_identity()) {
    out << "n " << g.vertex_count() << "\n";
    for (const auto& e : g.edges()) out << e.a << " " << e.b << "\n";
    return;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    detail::require_writable_label(labels.label(v));
  for (const auto& e : g.edges())
    out << labels.label(e.a) << " " << labels.label(e.b) << "\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) out << labels.label(v) << "\n";
}

inline std::string format_decimal(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

inline std::string format_coefficient_csv(const Coefficient& c) {
  return c.defined() ? format_decimal(c.value()) : "NA";
}

inline std::string format_optional_csv(const std::optional<double>& value) {
  return value ? format_decimal(*value) : "NA";
}

// Fixed column layout; every run over the same inputs yields the same bytes.
// Replicate rows come first, grouped by p; each p then contributes a mean, an
// sd and an undefined-count row keyed by the replicate column.
inline void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "p,replicate,C,C_R,C_prime,p_times_C_prime,n_vertices,n_edges,"
         "n_allowed_pairs,triangles,wedges,closed_allowed,open_allowed\n";
  for (const auto& r : result.replicates) {
    out << format_decimal(r.p) << ',' << r.replicate_index << ','
        << format_coefficient_csv(r.c_global) << ',' << format_coefficient_csv(r.c_relative)
        << ',' << format_coefficient_csv(r.c_prime) << ',';
    if (r.c_prime.defined()) out << format_decimal(r.p * r.c_prime.value());
    else out << "NA";
    out << ',' << r.n_vertices << ',' << r.n_edges << ',' << r.n_allowed_pairs << ','
        << r.census.triangles << ',' << r.census.wedges << ',' << r.census.closed_allowed
        << ',' << r.census.open_allowed << "\n";
  }
  for (const auto& a : result.aggregates) {
    out << format_decimal(a.p) << ",mean," << format_optional_csv(a.mean_c) << ','
        << format_optional_csv(a.mean_cr) << ',' << format_optional_csv(a.mean_cprime) << ','
        << format_optional_csv(a.p_times_mean_cprime) << ','
        << format_decimal(a.mean_vertices) << ',' << format_decimal(a.mean_edges) << ','
        << format_decimal(a.mean_allowed_pairs) << ',' << format_decimal(a.mean_triangles)
        << ',' << format_decimal(a.mean_wedges) << ','
        << format_decimal(a.mean_closed_allowed) << ','
        << format_decimal(a.mean_open_allowed) << "\n";
    out << format_decimal(a.p) << ",sd," << format_optional_csv(a.sd_c) << ','
        << format_optional_csv(a.sd_cr) << ",NA,NA,NA,NA,NA,NA,NA,NA,NA\n";
    out << format_decimal(a.p) << ",undefined," << a.undefined_c << ',' << a.undefined_cr
        << ',' << a.undefined_cprime << ",NA,NA,NA,NA,NA,NA,NA,NA\n";
  }
}

// Writes through a temporary in the same directory and renames into place, so
// readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::function<void(std::ostream&)>& writer) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    writer(out);
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() +
                        "': " + ec.message());
}

}  // namespace relcc
