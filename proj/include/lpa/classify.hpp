#pragma once

#include <string_view>

#include "lpa/graph.hpp"

namespace lpa {

/// Number of closed simple paths based at a vertex, capped at two.
enum class CspClass { Zero, One, TwoPlus };

std::string_view to_string(CspClass c) noexcept;

/// Splits `v` into an out-copy and an in-copy and counts paths between them
/// through the region that can both be reached from `v` and return to it
/// without passing through `v`. Any cycle, omega bundle or parallel pair in
/// that region yields TwoPlus.
CspClass csp_class(const Graph& g, VertexId v);

/// P_l: trees without bifurcations or cycles.
VertexSet line_points(const Graph& g);
/// P_c: vertices of cycles without exits.
VertexSet cycles_without_exits(const Graph& g);
/// P_ec: vertices of extreme cycles. A cycle is extreme exactly when it lies
/// in a non-trivial terminal strongly connected component that contains a
/// bifurcation; every vertex of such a component lies on such a cycle.
VertexSet extreme_cycles(const Graph& g);
/// P_b∞ restricted to finite vertex sets: vertices whose tree contains an
/// infinite emitter.
VertexSet b_infinity(const Graph& g);
/// P_pi: v lies in the closure of W_v = {w in T(v) : csp_class(w) = TwoPlus}.
VertexSet properly_infinite(const Graph& g);

/// An infinite emitter that is a breaking vertex of at least one hereditary
/// set: none of its omega targets can reach it back.
bool can_break(const Graph& g, VertexId v);

/// P_ppi: T(v) ⊆ P_pi and no vertex of T(v) can break.
VertexSet p_ppi(const Graph& g);

struct PpiSplit {
  VertexSet p_ec_prime;  ///< extreme-cycle vertices below P_ppi \ P_ec
  VertexSet p_pec;       ///< P_ec \ P_ec'
  VertexSet p_prime;     ///< P_ppi \ P_pec
};
PpiSplit split_ppi(const Graph& g);

/// Every vertex on a closed simple path is the base of at least two.
bool condition_K(const Graph& g);
/// Every cycle has an exit.
bool condition_L(const Graph& g);

/// P_(K): every vertex of T(v) has csp_class != One.
VertexSet p_K(const Graph& g);
/// P_ex = P_(K) ∪ B_{P_(K)}.
VertexSet p_ex(const Graph& g);

struct Classification {
  VertexSet p_l;
  VertexSet p_c;
  VertexSet p_ec;
  VertexSet p_binf;
  VertexSet p_pi;
  VertexSet p_ppi;
  VertexSet p_ec_prime;
  VertexSet p_pec;
  VertexSet p_prime;
  VertexSet p_K;
  VertexSet p_ex;
  /// B_{P_(K)} and its members with no edge leaving P_(K).
  VertexSet exchange_breaking;
  VertexSet exchange_breaking_zero_outside;
  bool condition_K = true;
  bool condition_L = true;
};

/// Every classifier at once, sharing intermediate results.
Classification classify(const Graph& g);

}  // namespace lpa
