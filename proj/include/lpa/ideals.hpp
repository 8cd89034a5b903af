#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "lpa/classify.hpp"
#include "lpa/closure.hpp"
#include "lpa/graph.hpp"

namespace lpa {

/// Graded ideal I(H ∪ S^H) in canonical form: H hereditary and saturated,
/// S ⊆ B_H.
struct GradedIdealDescriptor {
  HereditarySet h;
  VertexSet s;
  std::uint64_t graph_fingerprint = 0;

  friend bool operator==(const GradedIdealDescriptor&,
                         const GradedIdealDescriptor&) = default;
};

/// H = hs_closure(x). Throws PreconditionError when S ⊄ B_H.
GradedIdealDescriptor ideal_descriptor(const Graph& g, const VertexSet& x,
                                       const VertexSet& s = {});

/// Containment of graded ideals. Throws PreconditionError when the
/// descriptors come from different graphs.
bool descriptor_leq(const GradedIdealDescriptor& a,
                    const GradedIdealDescriptor& b);

/// S = ∅ and H ⊆ P_ppi.
bool is_purely_infinite_ideal(const Graph& g, const GradedIdealDescriptor& d);

enum class ClassKind { Pec, Pprime };
enum class ClassLabel { PurelyInfiniteSimple, PurelyInfiniteNonSimpleIndecomposable };

std::string_view to_string(ClassKind k) noexcept;
std::string_view to_string(ClassLabel l) noexcept;

struct CycleClass {
  ClassKind kind;
  /// Indices into condense(g).components.
  std::vector<std::uint32_t> member_sccs;
  VertexSet class_vertices;
  /// T(class_vertices)
  VertexSet tree;
  ClassLabel label;
};

/// Pec classes (one per non-trivial terminal component inside P_pec) followed
/// by Pprime classes (non-trivial components inside P′ joined whenever one
/// reaches the other). Each group is ordered by smallest vertex.
std::vector<CycleClass> pi_decomposition(const Graph& g);
/// Same, reusing a classification of `g`.
std::vector<CycleClass> pi_decomposition(const Graph& g, const Classification& c);

struct LargestIdealsReport {
  Classification classification;
  VertexSet semisimple_gens;                  ///< P_l
  VertexSet loc_noetherian_gens;              ///< P_l ⊔ P_c
  VertexSet loc_noetherian_no_min_idem_gens;  ///< P_c
  VertexSet purely_infinite_gens;             ///< P_ppi
  VertexSet exchange_gens;                    ///< P_ex
  VertexSet dense_gens;                       ///< P_l ∪ P_c ∪ P_ec ∪ P_b∞
  DensityVerdict density;
  std::vector<CycleClass> pi_decomposition;
};

LargestIdealsReport largest_ideals_report(const Graph& g);

/// Throws InvariantViolation naming the first structural property the report
/// fails: density, disjoint class trees, class coverage of P_pec and P′,
/// heredity of the generator sets that must be hereditary.
void check_report_invariants(const Graph& g, const LargestIdealsReport& r);

}  // namespace lpa
