#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpa/closure.hpp"
#include "lpa/graph.hpp"

namespace lpa {

/// The generalized hedgehog graph of (H, S).
///
/// Vertices are H, S and one fresh vertex per admissible path:
///   F1: e1...en with r(en) in H, s(en) outside H ∪ S and every interior
///       range outside H;
///   F2: e1...en (n >= 1) with r(en) in S and every interior range outside
///       H ∪ S.
/// Edges are the bundles sourced in H, the bundles from S into H, and one
/// bar-edge from every path vertex to the range of its path.
///
/// Path vertices are named "p:" followed by the edge-instance names of the
/// path joined by "."; the bar-edge of "p:x" is "bar:x".
struct HedgehogGraph {
  Graph base;
  HereditarySet h;
  VertexSet s;
  bool finite = true;
  /// Set when the path sets are infinite and only paths up to this length
  /// were materialized.
  std::optional<std::size_t> truncated_at;
  /// Path vertex name -> edge-instance names of the path in the input graph.
  std::map<std::string, std::vector<std::string>> path_vertex_table;
  /// Omega bundles that occur on admissible paths. Each contributes
  /// infinitely many path vertices, none of which is materialized.
  std::vector<std::string> omega_families;
};

constexpr std::size_t kDefaultHedgehogDepth = 6;

/// True iff F1(H, S) and F2(H, S) are finite. Throws PreconditionError when
/// H is not hereditary or S is not contained in B_H.
bool hedgehog_is_finite(const Graph& g, const VertexSet& h, const VertexSet& s);

/// Exact when finite (the depth limit is then ignored); otherwise every
/// admissible path of length <= depth_limit that avoids omega bundles.
HedgehogGraph build_hedgehog(const Graph& g, const VertexSet& h,
                             const VertexSet& s,
                             std::size_t depth_limit = kDefaultHedgehogDepth);

}  // namespace lpa
