#include "lpa/ideals.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lpa/error.hpp"

namespace lpa {

GradedIdealDescriptor ideal_descriptor(const Graph& g, const VertexSet& x,
                                       const VertexSet& s) {
  g.check_members(x);
  g.check_members(s);
  GradedIdealDescriptor d;
  d.h = hs_closure(g, x);
  BreakingSet b = breaking_vertices(g, d.h.members());
  if (!s.is_subset_of(b.members)) {
    throw PreconditionError("S must consist of breaking vertices of H");
  }
  d.s = s;
  d.graph_fingerprint = g.fingerprint();
  return d;
}

bool descriptor_leq(const GradedIdealDescriptor& a,
                    const GradedIdealDescriptor& b) {
  if (a.graph_fingerprint != b.graph_fingerprint) {
    throw PreconditionError("descriptors belong to different graphs");
  }
  if (!a.h.members().is_subset_of(b.h.members())) return false;
  return set_difference(a.s, b.s).is_subset_of(b.h.members());
}

bool is_purely_infinite_ideal(const Graph& g, const GradedIdealDescriptor& d) {
  if (d.graph_fingerprint != g.fingerprint()) {
    throw PreconditionError("descriptor belongs to a different graph");
  }
  return d.s.empty() && d.h.members().is_subset_of(p_ppi(g));
}

std::string_view to_string(ClassKind k) noexcept {
  return k == ClassKind::Pec ? "Pec" : "Pprime";
}

std::string_view to_string(ClassLabel l) noexcept {
  return l == ClassLabel::PurelyInfiniteSimple
             ? "PurelyInfiniteSimple"
             : "PurelyInfiniteNonSimpleIndecomposable";
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

CycleClass make_class(const Graph& g, const Condensation& cond, ClassKind kind,
                      std::vector<std::uint32_t> sccs) {
  CycleClass c;
  c.kind = kind;
  std::sort(sccs.begin(), sccs.end());
  for (auto id : sccs) c.class_vertices = set_union(c.class_vertices, cond.components[id]);
  c.member_sccs = std::move(sccs);
  c.tree = reachable(g, c.class_vertices);
  c.label = kind == ClassKind::Pec
                ? ClassLabel::PurelyInfiniteSimple
                : ClassLabel::PurelyInfiniteNonSimpleIndecomposable;
  return c;
}

std::vector<CycleClass> decompose(const Graph& g, const Condensation& cond,
                                  const VertexSet& p_pec,
                                  const VertexSet& p_prime) {
  std::vector<CycleClass> out;
  for (std::uint32_t c = 0; c < cond.size(); ++c) {
    if (!cond.trivial[c] && cond.terminal[c] &&
        cond.components[c].is_subset_of(p_pec)) {
      out.push_back(make_class(g, cond, ClassKind::Pec, {c}));
    }
  }

  // P′ is hereditary, so a component meeting it lies inside it.
  std::vector<std::uint32_t> inside;
  for (std::uint32_t c = 0; c < cond.size(); ++c) {
    if (!cond.trivial[c] && cond.components[c].is_subset_of(p_prime)) {
      inside.push_back(c);
    }
  }
  // Components are numbered by smallest vertex, not topologically.
  std::vector<std::vector<bool>> reach(cond.size(),
                                       std::vector<bool>(cond.size(), false));
  for (std::uint32_t c = 0; c < cond.size(); ++c) {
    std::vector<std::uint32_t> stack{c};
    reach[c][c] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (auto y : cond.successors[x]) {
        if (!reach[c][y]) {
          reach[c][y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  UnionFind uf(cond.size());
  for (std::size_t i = 0; i < inside.size(); ++i) {
    for (std::size_t j = i + 1; j < inside.size(); ++j) {
      auto a = inside[i];
      auto b = inside[j];
      if (reach[a][b] || reach[b][a]) uf.unite(a, b);
    }
  }
  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (auto c : inside) groups[uf.find(c)].push_back(c);
  std::vector<CycleClass> primes;
  for (auto& [root, members] : groups) {
    primes.push_back(make_class(g, cond, ClassKind::Pprime, std::move(members)));
  }
  std::sort(primes.begin(), primes.end(), [](const CycleClass& a, const CycleClass& b) {
    return a.class_vertices.ids().front() < b.class_vertices.ids().front();
  });
  for (auto& p : primes) out.push_back(std::move(p));
  return out;
}

}  // namespace

std::vector<CycleClass> pi_decomposition(const Graph& g) {
  return pi_decomposition(g, classify(g));
}

std::vector<CycleClass> pi_decomposition(const Graph& g, const Classification& c) {
  return decompose(g, condense(g), c.p_pec, c.p_prime);
}

LargestIdealsReport largest_ideals_report(const Graph& g) {
  LargestIdealsReport r;
  r.classification = classify(g);
  const Classification& c = r.classification;
  r.semisimple_gens = c.p_l;
  r.loc_noetherian_gens = set_union(c.p_l, c.p_c);
  r.loc_noetherian_no_min_idem_gens = c.p_c;
  r.purely_infinite_gens = c.p_ppi;
  r.exchange_gens = c.p_ex;
  r.dense_gens = set_union(set_union(c.p_l, c.p_c), set_union(c.p_ec, c.p_binf));
  r.density = density_check(g, r.dense_gens);
  r.pi_decomposition = decompose(g, condense(g), c.p_pec, c.p_prime);
  return r;
}

void check_report_invariants(const Graph& g, const LargestIdealsReport& r) {
  const Classification& c = r.classification;
  auto fail = [](const std::string& what) { throw InvariantViolation(what); };

  if (!r.density.dense) fail("dense generators do not give a dense ideal");

  struct Named {
    const char* name;
    const VertexSet* set;
  };
  for (Named n : {Named{"P_l", &c.p_l}, Named{"P_c", &c.p_c},
                  Named{"P_ec", &c.p_ec}, Named{"P_ppi", &c.p_ppi},
                  Named{"P'", &c.p_prime}, Named{"P_(K)", &c.p_K}}) {
    if (!is_hereditary(g, *n.set)) fail(std::string(n.name) + " is not hereditary");
  }
  if (!is_saturated(g, c.p_ppi)) fail("P_ppi is not saturated");
  if (c.p_l.intersects(c.p_c)) fail("P_l and P_c intersect");
  if (!c.p_ppi.is_subset_of(c.p_pi)) fail("P_ppi is not contained in P_pi");
  if (!set_union(c.p_ec_prime, c.p_pec).is_subset_of(c.p_ec) ||
      c.p_ec_prime.intersects(c.p_pec)) {
    fail("P_ec' and P_pec do not partition P_ec");
  }

  VertexSet seen;
  VertexSet pec_union;
  VertexSet prime_union;
  for (const auto& cls : r.pi_decomposition) {
    if (cls.tree.intersects(seen)) fail("class trees are not disjoint");
    seen = set_union(seen, cls.tree);
    if (cls.kind == ClassKind::Pec) {
      if (!cls.class_vertices.is_subset_of(c.p_pec)) fail("Pec class leaves P_pec");
      pec_union = set_union(pec_union, cls.class_vertices);
    } else {
      if (!cls.class_vertices.is_subset_of(c.p_prime)) fail("P' class leaves P'");
      prime_union = set_union(prime_union, cls.class_vertices);
    }
  }
  if (pec_union != c.p_pec) fail("Pec classes do not cover P_pec");

  Condensation cond = condense(g);
  VertexSet prime_cycles;
  for (std::size_t i = 0; i < cond.size(); ++i) {
    if (!cond.trivial[i] && cond.components[i].is_subset_of(c.p_prime)) {
      prime_cycles = set_union(prime_cycles, cond.components[i]);
    }
  }
  if (hs_closure(g, prime_union).members() != hs_closure(g, prime_cycles).members()) {
    fail("P' classes do not generate the ideal of the P' cycles");
  }
}

}  // namespace lpa
