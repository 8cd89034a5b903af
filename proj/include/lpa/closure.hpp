#pragma once

#include <cstddef>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa {

/// A vertex set together with certified heredity/saturation flags.
class HereditarySet {
 public:
  HereditarySet() = default;

  /// Evaluates both flags for `members` in `g`.
  static HereditarySet certify(const Graph& g, VertexSet members);

  const VertexSet& members() const noexcept { return members_; }
  bool is_hereditary() const noexcept { return hereditary_; }
  bool is_saturated() const noexcept { return saturated_; }

  friend bool operator==(const HereditarySet&, const HereditarySet&) = default;

 private:
  VertexSet members_;
  bool hereditary_ = true;
  bool saturated_ = true;
};

bool is_hereditary(const Graph& g, const VertexSet& x);
/// No regular vertex outside `x` has all of its edge targets inside `x`.
bool is_saturated(const Graph& g, const VertexSet& x);

/// S(X): X plus every regular vertex whose edge targets all lie in X.
VertexSet saturate_once(const Graph& g, const VertexSet& x);

struct ClosureTrace {
  HereditarySet closure;
  /// Saturation passes executed, including the final pass that added nothing.
  std::size_t rounds = 0;
};

/// Smallest hereditary saturated superset of `seed`. One tree step, then
/// saturation to a fixpoint.
ClosureTrace hs_closure_traced(const Graph& g, const VertexSet& seed);
HereditarySet hs_closure(const Graph& g, const VertexSet& seed);

/// B_H, relative to a hereditary set H.
struct BreakingSet {
  VertexSet members;
  /// Members emitting no edge at all outside H. They satisfy the
  /// set-builder condition (count 0 < infinity) and are reported so that
  /// consumers who require a nonzero count can drop them.
  VertexSet zero_outside;
};

/// Infinite emitters outside H with finitely many edges (possibly none)
/// leaving H. Throws PreconditionError when H is not hereditary.
BreakingSet breaking_vertices(const Graph& g, const VertexSet& h);

/// Bundles from `v` whose target lies outside `h` (indices into bundles()).
std::vector<std::size_t> bundles_leaving(const Graph& g, VertexId v,
                                         const VertexSet& h);

/// E_H: vertices H, every bundle sourced in H. Throws PreconditionError
/// when H is not hereditary.
Graph restriction_graph(const Graph& g, const VertexSet& h);

struct DensityVerdict {
  bool dense = true;
  /// Per vertex: a vertex path from it into the target set (a single vertex
  /// for members), or empty when the vertex cannot reach the set.
  std::vector<std::vector<VertexId>> witness;
  /// Vertices whose tree misses the target set.
  VertexSet failing;
};

/// A graded ideal I(X) is dense iff every vertex connects to X.
DensityVerdict density_check(const Graph& g, const VertexSet& target);

}  // namespace lpa
