#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lpa/graph.hpp"

namespace lpa {

using Rational = boost::multiprecision::cpp_rational;

/// One edge of a bundle: `member` runs over 1..k.
struct EdgeInstance {
  std::uint32_t bundle;
  std::uint64_t member;

  friend auto operator<=>(const EdgeInstance&, const EdgeInstance&) = default;
};

/// α β* with r(α) = r(β) = anchor. Both paths are stored first edge first;
/// an empty path stands for the anchor vertex.
struct Monomial {
  std::vector<EdgeInstance> real;
  std::vector<EdgeInstance> ghost;
  VertexId anchor = 0;

  /// |α| - |β|
  std::int64_t degree() const noexcept {
    return static_cast<std::int64_t>(real.size()) -
           static_cast<std::int64_t>(ghost.size());
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Finite Q-linear combination of monomials in normal form.
class AlgebraElement {
 public:
  using Terms = std::map<Monomial, Rational>;

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::uint64_t graph_fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  friend class Algebra;
  Terms terms_;
  std::uint64_t fingerprint_ = 0;
};

/// L_Q(E) for a fixed graph. Elements are always kept in the special-edge
/// normal form: at every regular vertex v one edge γ(v) is chosen (the
/// edge instance with the smallest name), and α e (β e)* with e = γ(v)
/// is rewritten to α β* - Σ_{f ≠ γ(v)} α f (β f)*.
///
/// The graph must outlive the Algebra. Edges of omega bundles cannot be
/// named; infinite emitters appear only through their vertex and finite
/// bundles.
class Algebra {
 public:
  explicit Algebra(const Graph& g);

  const Graph& graph() const noexcept { return *g_; }
  /// Special edge of a regular vertex; nullopt otherwise.
  std::optional<EdgeInstance> special_edge(VertexId v) const;
  bool is_canonical(const Monomial& m) const;

  AlgebraElement zero() const;
  /// c times the unit Σ_v v.
  AlgebraElement scalar(const Rational& c) const;
  AlgebraElement vertex(VertexId v) const;
  AlgebraElement edge(EdgeInstance e) const;
  AlgebraElement ghost(EdgeInstance e) const;
  /// Normal form of a single (possibly non-canonical) monomial. Throws
  /// PreconditionError when the paths do not fit together.
  AlgebraElement monomial(const Monomial& m) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement subtract(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement scale(const AlgebraElement& a, const Rational& c) const;
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  /// The involution: α β* ↦ β α*.
  AlgebraElement star(const AlgebraElement& a) const;
  /// Re-runs the rewrite on every term; the identity on stored elements.
  AlgebraElement normalize(const AlgebraElement& a) const;

  /// v - Σ e e* over the edges from v leaving H. Throws PreconditionError
  /// unless v ∈ B_H.
  AlgebraElement v_H_element(VertexId v, const VertexSet& h) const;

  std::map<std::int64_t, AlgebraElement> graded_components(
      const AlgebraElement& a) const;

  /// Every canonical monomial with |α|, |β| <= max_length, in map order.
  std::vector<Monomial> normal_monomials(std::size_t max_length) const;

  /// Grammar:
  ///   expr   := [+|-] term { (+|-) term }
  ///   term   := factor { factor }            (juxtaposition is product)
  ///   factor := atom { * }                   (postfix * is the involution)
  ///   atom   := integer [/ integer] | name | ( expr )
  /// A name is a vertex, a multiplicity-one bundle, or bundle[i]. The
  /// character "·" is read as whitespace. Throws ExpressionError.
  AlgebraElement parse(std::string_view expr) const;

  /// "α (β)*" with edges separated by spaces; a bare vertex name when both
  /// paths are empty.
  std::string format(const Monomial& m) const;
  /// "c · m" terms joined by " + " / " - "; "0" for zero.
  std::string format(const AlgebraElement& a) const;
  std::string format(const Rational& c) const;
  std::string instance_name(EdgeInstance e) const;

 private:
  VertexId left_source(const Monomial& m) const;
  VertexId right_source(const Monomial& m) const;
  void check(const AlgebraElement& a) const;
  void reduce_into(Monomial m, const Rational& c, AlgebraElement::Terms& out) const;
  AlgebraElement make(AlgebraElement::Terms terms) const;

  const Graph* g_;
  std::vector<std::optional<EdgeInstance>> special_;
};

}  // namespace lpa
