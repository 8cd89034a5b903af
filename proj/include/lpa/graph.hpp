#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace lpa {

/// Index of a vertex inside its Graph. Vertices are numbered in
/// lexicographic order of their names, so sorting ids sorts names.
using VertexId = std::uint32_t;

/// Number of parallel edges in a bundle: a positive integer or omega.
class Multiplicity {
 public:
  static constexpr Multiplicity omega() noexcept { return Multiplicity(0); }
  /// Throws GraphError when `count` is zero.
  static Multiplicity finite(std::uint64_t count);

  constexpr bool is_omega() const noexcept { return value_ == 0; }
  /// Number of edges; only meaningful when !is_omega().
  constexpr std::uint64_t count() const noexcept { return value_; }

  /// "omega" or the decimal count.
  std::string to_string() const;

  friend constexpr bool operator==(Multiplicity, Multiplicity) = default;

 private:
  constexpr explicit Multiplicity(std::uint64_t v) noexcept : value_(v) {}
  std::uint64_t value_;  // 0 encodes omega
};

struct EdgeBundle {
  std::string id;
  VertexId source;
  VertexId target;
  Multiplicity mult;

  friend bool operator==(const EdgeBundle&, const EdgeBundle&) = default;
};

enum class VertexKind { Sink, Regular, InfiniteEmitter };

std::string_view to_string(VertexKind kind) noexcept;

/// Membership flags indexed by vertex id.
using VertexMask = boost::container::small_vector<std::uint8_t, 32>;

/// Sorted set of vertex ids. Small sets are stored inline.
class VertexSet {
 public:
  using Storage = boost::container::small_vector<VertexId, 8>;
  using const_iterator = Storage::const_iterator;

  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids);
  static VertexSet from_unsorted(std::span<const VertexId> ids);
  /// {0, ..., n-1}
  static VertexSet all(std::size_t n);
  /// Members are the positions where `mask` is true.
  static VertexSet from_mask(const VertexMask& mask);

  bool contains(VertexId v) const noexcept;
  /// Returns true when `v` was not already present.
  bool insert(VertexId v);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  const_iterator begin() const noexcept { return ids_.begin(); }
  const_iterator end() const noexcept { return ids_.end(); }
  const Storage& ids() const noexcept { return ids_; }
  VertexMask mask(std::size_t n) const;

  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return std::equal(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end());
  }
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
    return std::lexicographical_compare_three_way(a.ids_.begin(), a.ids_.end(),
                                                  b.ids_.begin(), b.ids_.end());
  }

 private:
  friend VertexSet set_union(const VertexSet& a, const VertexSet& b);
  friend VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
  friend VertexSet set_difference(const VertexSet& a, const VertexSet& b);

  Storage ids_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);

/// Finite directed graph whose edges come in bundles of multiplicity k or
/// omega. Immutable once built; vertices are sorted by name and bundles by id.
class Graph {
 public:
  struct BundleSpec {
    std::string id;
    std::string source;
    std::string target;
    Multiplicity mult = Multiplicity::finite(1);
  };

  Graph() = default;

  /// Throws GraphError on duplicate ids (vertex and bundle ids share one
  /// namespace), dangling endpoints or malformed ids.
  static Graph build(std::vector<std::string> vertices,
                     std::vector<BundleSpec> bundles);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& vertex_names() const noexcept {
    return names_;
  }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  /// Throws PreconditionError for unknown names.
  VertexId vertex(std::string_view name) const;
  VertexSet vertex_set(std::span<const std::string> names) const;
  std::vector<std::string> names(const VertexSet& s) const;
  /// Throws PreconditionError if some member is not a vertex of this graph.
  void check_members(const VertexSet& s) const;

  const std::vector<EdgeBundle>& bundles() const noexcept { return bundles_; }
  const EdgeBundle& bundle(std::size_t i) const { return bundles_.at(i); }
  std::optional<std::size_t> find_bundle(std::string_view id) const;

  /// Indices into bundles() of the bundles leaving / entering `v`.
  std::span<const std::size_t> out_bundles(VertexId v) const {
    return out_.row(v);
  }
  std::span<const std::size_t> in_bundles(VertexId v) const {
    return in_.row(v);
  }
  /// Distinct targets of `v`, sorted.
  std::span<const VertexId> successors(VertexId v) const {
    return succ_.row(v);
  }
  /// Distinct sources of edges into `v`, sorted.
  std::span<const VertexId> predecessors(VertexId v) const {
    return pred_.row(v);
  }

  VertexKind kind(VertexId v) const { return kinds_.at(v); }
  bool is_regular(VertexId v) const {
    return kind(v) == VertexKind::Regular;
  }
  bool is_infinite_emitter(VertexId v) const {
    return kind(v) == VertexKind::InfiniteEmitter;
  }
  /// Sum of the finite multiplicities leaving `v` (omega bundles excluded).
  std::uint64_t finite_out_degree(VertexId v) const {
    return finite_out_.at(v);
  }
  /// |s^{-1}(v)| >= 2, counting omega as infinite.
  bool is_bifurcation(VertexId v) const;

  /// Hash of names and bundles; used to detect graph mismatches.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.names_ == b.names_ && a.bundles_ == b.bundles_;
  }

 private:
  // Per-vertex lists stored back to back; row v is [start[v], start[v+1]).
  template <class T>
  struct Rows {
    std::vector<std::uint32_t> start;
    std::vector<T> items;

    std::span<const T> row(VertexId v) const {
      return std::span<const T>(items).subspan(start.at(v), start.at(v + 1) - start[v]);
    }
  };

  std::vector<std::string> names_;
  std::vector<EdgeBundle> bundles_;
  Rows<std::size_t> out_;
  Rows<std::size_t> in_;
  Rows<VertexId> succ_;
  Rows<VertexId> pred_;
  std::vector<VertexKind> kinds_;
  std::vector<std::uint64_t> finite_out_;
  std::uint64_t fingerprint_ = 0;
};

/// Name of one edge inside a bundle: the bundle id when the multiplicity is
/// one, otherwise "id[i]" with 1 <= i <= k.
std::string instance_name(const EdgeBundle& b, std::uint64_t member);

/// True for ids accepted in graph text: no whitespace, '#' or ','.
bool is_valid_id(std::string_view id) noexcept;

/// Parses the line-oriented graph format:
///
///     vertices <id> <id> ...            (repeatable)
///     edge <eid> <src> <dst>            (multiplicity 1)
///     edge <eid> <src> <dst> x<k>       (multiplicity k >= 1)
///     bundle <eid> <src> <dst> omega
///
/// '#' starts a comment. Throws ParseError with line and column.
Graph parse_graph(std::string_view text);

/// Canonical text form: one `vertices` line, bundles sorted by id.
std::string serialize_graph(const Graph& g);

/// Graphviz rendering, one arrow per bundle labelled "×k" or "×ω".
std::string to_dot(const Graph& g);

/// T(X): everything reachable from `from`, including `from` itself.
VertexSet reachable(const Graph& g, const VertexSet& from);
VertexSet reachable(const Graph& g, VertexId from);
/// Vertices from which some member of `to` is reachable (including `to`).
VertexSet coreachable(const Graph& g, const VertexSet& to);

struct Condensation {
  /// Component number of every vertex.
  std::vector<std::uint32_t> scc_of;
  /// Components, numbered by their smallest member.
  std::vector<VertexSet> components;
  /// Sorted successor components in the condensation DAG.
  std::vector<std::vector<std::uint32_t>> successors;
  /// Single vertex without a self-loop.
  std::vector<bool> trivial;
  /// No outgoing DAG edge.
  std::vector<bool> terminal;

  std::size_t size() const noexcept { return components.size(); }
};

Condensation condense(const Graph& g);

}  // namespace lpa
