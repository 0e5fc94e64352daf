#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relcc {

using VertexId = std::uint32_t;
using Count = std::uint64_t;

// Unordered pair of distinct vertices. Canonical form has a < b;
// ordered_pair() normalizes, constructors do not.
struct VertexPair {
  VertexId a = 0;
  VertexId b = 0;

  friend constexpr bool operator==(const VertexPair&, const VertexPair&) = default;
  friend constexpr auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

constexpr VertexPair ordered_pair(VertexId u, VertexId v) {
  return u < v ? VertexPair{u, v} : VertexPair{v, u};
}

// k choose 2. Safe for k up to 2^32.
constexpr Count choose2(Count k) { return k < 2 ? 0 : k * (k - 1) / 2; }

// All library errors derive from Error. code() is a stable machine-readable
// tag; the CLI prints it and maps every Error to exit status 1.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

namespace detail {
inline std::string at_line(Count line) {
  return line == 0 ? std::string{} : " at line " + std::to_string(line);
}
}  // namespace detail

class SelfLoopError : public Error {
public:
  explicit SelfLoopError(VertexId vertex, Count line = 0)
      : Error("self-loop",
              "self-loop on vertex " + std::to_string(vertex) + detail::at_line(line)),
        vertex_(vertex) {}

  VertexId vertex() const noexcept { return vertex_; }

private:
  VertexId vertex_;
};

class DuplicateEdgeError : public Error {
public:
  explicit DuplicateEdgeError(VertexPair edge, Count line = 0)
      : Error("duplicate-edge",
              "duplicate edge {" + std::to_string(edge.a) + ", " + std::to_string(edge.b) +
                  "}" + detail::at_line(line)),
        edge_(edge) {}

  VertexPair edge() const noexcept { return edge_; }

private:
  VertexPair edge_;
};

class DuplicateMembershipError : public Error {
public:
  DuplicateMembershipError(VertexId individual, VertexId group, Count line = 0)
      : Error("duplicate-membership",
              "duplicate membership (" + std::to_string(individual) + ", " +
                  std::to_string(group) + ")" + detail::at_line(line)) {}
};

class VertexOutOfRangeError : public Error {
public:
  VertexOutOfRangeError(Count index, Count bound, Count line = 0,
                        const char* kind = "vertex")
      : Error("vertex-out-of-range",
              std::string(kind) + " index " + std::to_string(index) + " out of range [0, " +
                  std::to_string(bound) + ")" + detail::at_line(line)),
        index_(index), bound_(bound) {}

  Count index() const noexcept { return index_; }
  Count bound() const noexcept { return bound_; }

private:
  Count index_;
  Count bound_;
};

class DimensionMismatchError : public Error {
public:
  DimensionMismatchError(Count left, Count right)
      : Error("dimension-mismatch",
              "vertex count mismatch: " + std::to_string(left) + " vs " +
                  std::to_string(right)) {}
};

class MaskViolationError : public Error {
public:
  explicit MaskViolationError(std::vector<VertexPair> violations)
      : Error("mask-violation",
              std::to_string(violations.size()) +
                  " network edge(s) lie outside the capacity mask"),
        violations_(std::move(violations)) {}

  const std::vector<VertexPair>& violations() const noexcept { return violations_; }

private:
  std::vector<VertexPair> violations_;
};

class InvalidParamsError : public Error {
public:
  explicit InvalidParamsError(const std::string& message)
      : Error("invalid-params", message) {}
};

class ParseError : public Error {
public:
  ParseError(Count line, const std::string& message)
      : Error("parse", message + detail::at_line(line)), line_(line) {}

  Count line() const noexcept { return line_; }

private:
  Count line_;
};

class UnknownLabelError : public Error {
public:
  explicit UnknownLabelError(const std::string& label, const char* where)
      : Error("unknown-label",
              "label '" + label + "' is not present in the " + where) {}
};

class SizeLimitError : public Error {
public:
  explicit SizeLimitError(const std::string& message) : Error("size-limit", message) {}
};

class OverflowError : public Error {
public:
  explicit OverflowError(const std::string& message) : Error("overflow", message) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

inline Count checked_add(Count a, Count b, const char* what = "count") {
  const Count sum = a + b;
  if (sum < a) throw OverflowError(std::string(what) + " overflow");
  return sum;
}

inline Count checked_mul(Count a, Count b, const char* what = "count") {
  const unsigned __int128 product = static_cast<unsigned __int128>(a) * b;
  if (product > std::numeric_limits<Count>::max())
    throw OverflowError(std::string(what) + " overflow");
  return static_cast<Count>(product);
}

// k choose 3 with overflow checking.
inline Count choose3(Count k) {
  if (k < 3) return 0;
  const unsigned __int128 product =
      static_cast<unsigned __int128>(choose2(k)) * (k - 2) / 3;
  if (product > std::numeric_limits<Count>::max())
    throw OverflowError("triple count overflow");
  return static_cast<Count>(product);
}

}  // namespace relcc
