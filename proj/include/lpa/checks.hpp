#pragma once

// Independent reference implementations and randomized suites. Shared by the
// test binaries and `lpa selftest`.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpa/classify.hpp"
#include "lpa/graph.hpp"

namespace lpa::checks {

struct RandomGraphOptions {
  std::size_t min_vertices = 0;
  std::size_t max_vertices = 8;
  /// Largest finite multiplicity of a bundle.
  std::uint64_t max_mult = 3;
  /// Chance that a vertex pair (including loops) carries a bundle.
  double edge_probability = 0.3;
  /// Chance that a bundle is omega.
  double omega_probability = 0.05;
};

Graph random_graph(std::mt19937_64& rng, const RandomGraphOptions& opt);

/// Seed for case `index` of a suite seeded with `seed`.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

// ---- oracles -------------------------------------------------------------

/// Counts closed paths based at v that revisit v only at the end, by walk
/// enumeration of length at most twice the vertex count; walks are pruned
/// once they cannot return to v. If more than one such path exists, two of
/// them fit in that bound.
CspClass csp_oracle(const Graph& g, VertexId v);

/// Repeats "add successors, add saturated regular vertices" until nothing
/// changes.
VertexSet closure_oracle(const Graph& g, const VertexSet& seed);

/// Vertices on a cycle with an exit such that every path leaving the cycle
/// can return to it. Uses explicit simple-cycle enumeration.
VertexSet extreme_cycles_oracle(const Graph& g);
VertexSet extreme_cycles_oracle(const Graph& g, const std::vector<VertexSet>& cycles);

/// Simple cycles as vertex sets, by DFS from each smallest vertex.
std::vector<VertexSet> simple_cycles(const Graph& g);

/// Classes of simple cycles inside `region`, where two cycles are joined if
/// one reaches the other; returned as vertex unions, sorted.
std::vector<VertexSet> cycle_classes_oracle(const Graph& g, const VertexSet& region);
std::vector<VertexSet> cycle_classes_oracle(const Graph& g, const VertexSet& region,
                                            const std::vector<VertexSet>& cycles);

/// v with v in the naive closure of {w in T(v) : csp_oracle(w) = 2+}.
VertexSet properly_infinite_oracle(const Graph& g);

// ---- suites ---------------------------------------------------------------

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::optional<Graph> counterexample;

  bool ok() const noexcept { return failures == 0 && checked > 0; }
  void fail(const Graph& g, const std::string& what);
};

/// Structural invariants of the classifier and report on random graphs.
SuiteResult property_suite(std::size_t cases, std::size_t max_vertices,
                           std::uint64_t seed);
/// Oracle comparisons on random graphs.
SuiteResult oracle_suite(std::size_t cases, std::size_t max_vertices,
                         std::uint64_t seed);
/// Oracle comparisons on every graph with at most `max_vertices` vertices and
/// at most `max_mult` parallel edges per ordered pair, up to relabeling.
SuiteResult exhaustive_oracle_suite(std::size_t max_vertices, std::uint64_t max_mult);
/// P_ppi passes the purely-infinite test and no one-vertex extension does.
SuiteResult maximality_suite(std::size_t cases, std::size_t max_vertices,
                             std::uint64_t seed);

/// The Leavitt relations on every generator of `g`.
SuiteResult relations_suite(const std::vector<Graph>& graphs);
/// (v^H)^2 = v^H for every hereditary saturated H and every v in B_H.
SuiteResult breaking_idempotent_suite(std::size_t cases, std::size_t max_vertices,
                                      std::uint64_t seed);
/// (ab)c = a(bc) on random elements of random graphs.
SuiteResult associativity_suite(std::size_t samples, std::size_t max_vertices,
                                std::uint64_t seed);

}  // namespace lpa::checks
