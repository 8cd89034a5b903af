#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

#include "lpa/algebra.hpp"
#include "lpa/checks.hpp"
#include "lpa/closure.hpp"
#include "lpa/error.hpp"
#include "lpa/hedgehog.hpp"
#include "lpa/ideals.hpp"

namespace lpa::checks {

void SuiteResult::fail(const Graph& g, const std::string& what) {
  if (failures++ == 0) {
    first_failure = what;
    counterexample = g;
  }
}

namespace {

std::string show(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  for (VertexId v : s) {
    if (out.size() > 1) out += ",";
    out += g.name(v);
  }
  return out + "}";
}

RandomGraphOptions options_for(std::mt19937_64& rng, std::size_t max_vertices,
                               double omega_probability) {
  RandomGraphOptions opt;
  opt.max_vertices = max_vertices;
  opt.max_mult = 3;
  opt.omega_probability = omega_probability;
  std::uniform_real_distribution<double> density(0.1, 0.5);
  opt.edge_probability = density(rng);
  return opt;
}

Graph draw(std::uint64_t seed, std::uint64_t index, std::size_t max_vertices,
           double omega_probability) {
  std::mt19937_64 rng(case_seed(seed, index));
  return random_graph(rng, options_for(rng, max_vertices, omega_probability));
}

// Every vertex set of g as a bitmask-indexed list.
std::vector<VertexSet> all_subsets(std::size_t n) {
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    VertexSet s;
    for (VertexId v = 0; v < n; ++v) {
      if (mask & (1u << v)) s.insert(v);
    }
    out.push_back(std::move(s));
  }
  return out;
}

void check_invariants(const Graph& g, SuiteResult& r) {
  LargestIdealsReport rep = largest_ideals_report(g);
  const Classification& c = rep.classification;
  ++r.checked;
  try {
    check_report_invariants(g, rep);
  } catch (const InvariantViolation& e) {
    r.fail(g, e.what());
    return;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!reachable(g, v).intersects(rep.dense_gens)) {
      r.fail(g, g.name(v) + " does not connect to P_l ∪ P_c ∪ P_ec ∪ P_b∞");
      return;
    }
  }
  if (!c.p_ec.is_subset_of(c.p_ppi) || !c.p_ppi.is_subset_of(c.p_pi)) {
    r.fail(g, "P_ec ⊆ P_ppi ⊆ P_pi fails");
  } else if (!is_hereditary(g, c.p_ppi) || !is_saturated(g, c.p_ppi)) {
    r.fail(g, "P_ppi is not hereditary and saturated");
  } else if (c.p_pec.intersects(c.p_prime) ||
             set_union(c.p_pec, c.p_prime) != c.p_ppi) {
    r.fail(g, "P_pec and P' do not partition P_ppi");
  } else if (!rep.density.dense) {
    r.fail(g, "density check failed on the four-set union");
  }
  for (std::size_t i = 0; i < rep.pi_decomposition.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.pi_decomposition.size(); ++j) {
      if (rep.pi_decomposition[i].tree.intersects(rep.pi_decomposition[j].tree)) {
        r.fail(g, "class trees intersect");
        return;
      }
    }
  }
}

void compare_oracles(const Graph& g, SuiteResult& r, const std::vector<VertexSet>& seeds,
                     bool with_pi) {
  ++r.checked;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    CspClass fast = csp_class(g, v);
    CspClass slow = csp_oracle(g, v);
    if (fast != slow) {
      r.fail(g, "csp_class(" + g.name(v) + ") = " + std::string(to_string(fast)) +
                    ", walk enumeration gives " + std::string(to_string(slow)));
      return;
    }
  }
  for (const auto& seed : seeds) {
    VertexSet fast = hs_closure(g, seed).members();
    VertexSet slow = closure_oracle(g, seed);
    if (fast != slow) {
      r.fail(g, "hs_closure(" + show(g, seed) + ") = " + show(g, fast) +
                    ", naive fixpoint gives " + show(g, slow));
      return;
    }
  }
  Classification c = classify(g);
  std::vector<VertexSet> cycles = simple_cycles(g);
  VertexSet ec_slow = extreme_cycles_oracle(g, cycles);
  if (c.p_ec != ec_slow) {
    r.fail(g, "extreme_cycles = " + show(g, c.p_ec) + ", cycle enumeration gives " +
                  show(g, ec_slow));
    return;
  }
  std::vector<VertexSet> classes;
  for (const auto& cls : pi_decomposition(g, c)) {
    if (cls.kind == ClassKind::Pprime) classes.push_back(cls.class_vertices);
  }
  std::sort(classes.begin(), classes.end());
  if (classes != cycle_classes_oracle(g, c.p_prime, cycles)) {
    r.fail(g, "P' classes differ from cycle enumeration");
    return;
  }
  if (with_pi && c.p_pi != properly_infinite_oracle(g)) {
    r.fail(g, "P_pi differs from the oracle");
  }
}

// Independent purely-infinite test for I(H), H hereditary and saturated:
// in the hedgehog graph of H, no hereditary set has a breaking vertex and
// every vertex is properly infinite.
bool purely_infinite_by_hedgehog(const Graph& g, const VertexSet& h) {
  HedgehogGraph hh = build_hedgehog(g, h, {}, 2);
  const Graph& e = hh.base;
  const std::size_t n = e.vertex_count();
  // Path vertices have no incoming edges and one outgoing edge, so they
  // never affect heredity of the other vertices or the breaking condition.
  VertexSet core;
  for (VertexId v = 0; v < n; ++v) {
    if (!hh.path_vertex_table.count(e.name(v))) core.insert(v);
  }
  if (core.size() > 16) throw PreconditionError("graph too large for subset enumeration");
  std::vector<VertexId> ids(core.begin(), core.end());
  for (std::uint32_t mask = 0; mask < (1u << ids.size()); ++mask) {
    std::vector<bool> in(n, false);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (mask & (1u << i)) in[ids[i]] = true;
    }
    bool hereditary = true;
    for (const auto& b : e.bundles()) {
      if (in[b.source] && !in[b.target]) hereditary = false;
    }
    if (!hereditary) continue;
    for (VertexId u : ids) {
      if (in[u] || !e.is_infinite_emitter(u)) continue;
      bool finitely_many_out = true;
      for (std::size_t i : e.out_bundles(u)) {
        const auto& b = e.bundle(i);
        if (b.mult.is_omega() && !in[b.target]) finitely_many_out = false;
      }
      if (finitely_many_out) return false;
    }
  }
  VertexSet pi = properly_infinite_oracle(e);
  return pi.size() == n;
}

}  // namespace

SuiteResult property_suite(std::size_t cases, std::size_t max_vertices,
                           std::uint64_t seed) {
  SuiteResult r;
  r.name = "properties";
  for (std::size_t i = 0; i < cases; ++i) {
    check_invariants(draw(seed, i, max_vertices, 0.05), r);
  }
  return r;
}

SuiteResult oracle_suite(std::size_t cases, std::size_t max_vertices,
                         std::uint64_t seed) {
  SuiteResult r;
  r.name = "oracles-random";
  for (std::size_t i = 0; i < cases; ++i) {
    Graph g = draw(seed, i, max_vertices, 0.05);
    std::mt19937_64 rng(case_seed(seed ^ 0xC105E, i));
    std::vector<VertexSet> seeds;
    std::bernoulli_distribution coin(0.3);
    for (int k = 0; k < 4; ++k) {
      VertexSet s;
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (coin(rng)) s.insert(v);
      }
      seeds.push_back(std::move(s));
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) seeds.push_back({v});
    compare_oracles(g, r, seeds, true);
  }
  return r;
}

namespace {

// Adjacency matrices over {0..max_mult}, one representative per relabeling
// class: vertices are sorted by (loop, out-degree, in-degree), and among the
// labelings that keep that order the matrix code is minimal.
class Enumerator {
 public:
  static constexpr std::size_t kMaxVertices = 6;

  Enumerator(std::size_t n, std::uint64_t max_mult) : n_(n), base_(max_mult + 1) {
    if (n > kMaxVertices) throw PreconditionError("too many vertices to enumerate");
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    // The identity never rejects; skip it.
    while (std::next_permutation(p.begin(), p.end())) perms_.push_back(p);
  }

  void run(const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
    std::vector<std::uint64_t> m(n_ * n_, 0);
    const std::size_t cells = m.size();
    while (true) {
      if (canonical(m)) visit(m);
      std::size_t i = 0;
      while (i < cells && ++m[i] == base_) m[i++] = 0;
      if (i == cells) break;
    }
  }

 private:
  using Key = std::array<std::uint64_t, 3>;

  Key key(const std::vector<std::uint64_t>& m, std::size_t v) const {
    Key k{m[v * n_ + v], 0, 0};
    for (std::size_t w = 0; w < n_; ++w) {
      k[1] += m[v * n_ + w];
      k[2] += m[w * n_ + v];
    }
    return k;
  }

  bool canonical(const std::vector<std::uint64_t>& m) const {
    std::array<Key, kMaxVertices> keys;
    for (std::size_t v = 0; v < n_; ++v) {
      keys[v] = key(m, v);
      if (v > 0 && keys[v] < keys[v - 1]) return false;
    }
    for (const auto& p : perms_) {
      bool keeps = true;
      for (std::size_t v = 0; v < n_ && keeps; ++v) keeps = keys[p[v]] == keys[v];
      if (!keeps) continue;
      // Compare relabeled matrix m'[a][b] = m[p[a]][p[b]] with m, from the
      // most significant cell (the last one).
      for (std::size_t c = n_ * n_; c-- > 0;) {
        std::uint64_t a = m[p[c / n_] * n_ + p[c % n_]];
        if (a < m[c]) return false;
        if (a > m[c]) break;
      }
    }
    return true;
  }

  std::size_t n_;
  std::uint64_t base_;
  std::vector<std::vector<std::size_t>> perms_;
};

Graph from_matrix(std::size_t n, const std::vector<std::uint64_t>& m) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<Graph::BundleSpec> bundles;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (std::uint64_t k = m[s * n + t]) {
        bundles.push_back({"e" + std::to_string(s) + std::to_string(t), names[s],
                           names[t], Multiplicity::finite(k)});
      }
    }
  }
  return Graph::build(std::move(names), std::move(bundles));
}

}  // namespace

SuiteResult exhaustive_oracle_suite(std::size_t max_vertices, std::uint64_t max_mult) {
  SuiteResult r;
  r.name = "oracles-exhaustive";
  for (std::size_t n = 0; n <= max_vertices; ++n) {
    Enumerator en(n, max_mult);
    en.run([&](const std::vector<std::uint64_t>& m) {
      Graph g = from_matrix(n, m);
      std::vector<VertexSet> seeds;
      for (VertexId v = 0; v < n; ++v) seeds.push_back({v});
      compare_oracles(g, r, seeds, false);
    });
  }
  return r;
}

SuiteResult maximality_suite(std::size_t cases, std::size_t max_vertices,
                             std::uint64_t seed) {
  SuiteResult r;
  r.name = "maximality";
  for (std::size_t i = 0; i < cases; ++i) {
    Graph g = draw(seed, i, max_vertices, 0.1);
    ++r.checked;
    VertexSet ppi = p_ppi(g);
    GradedIdealDescriptor top = ideal_descriptor(g, ppi);
    if (top.h.members() != ppi) {
      r.fail(g, "P_ppi is not hereditary and saturated");
      continue;
    }
    if (!is_purely_infinite_ideal(g, top) || !purely_infinite_by_hedgehog(g, ppi)) {
      r.fail(g, "I(P_ppi) fails the purely-infinite test");
      continue;
    }
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
      if (ppi.contains(x)) continue;
      VertexSet bigger = ppi;
      bigger.insert(x);
      GradedIdealDescriptor d = ideal_descriptor(g, bigger);
      if (is_purely_infinite_ideal(g, d)) {
        r.fail(g, "adding " + g.name(x) + " keeps the ideal purely infinite");
        break;
      }
      if (purely_infinite_by_hedgehog(g, d.h.members())) {
        r.fail(g, "hedgehog test accepts I(P_ppi + " + g.name(x) + ")");
        break;
      }
    }
  }
  return r;
}

namespace {

std::vector<EdgeInstance> finite_instances(const Graph& g) {
  std::vector<EdgeInstance> out;
  for (std::size_t i = 0; i < g.bundles().size(); ++i) {
    const auto& b = g.bundle(i);
    if (b.mult.is_omega()) continue;
    for (std::uint64_t k = 1; k <= b.mult.count(); ++k) {
      out.push_back({static_cast<std::uint32_t>(i), k});
    }
  }
  return out;
}

}  // namespace

SuiteResult relations_suite(const std::vector<Graph>& graphs) {
  SuiteResult r;
  r.name = "relations";
  for (const Graph& g : graphs) {
    Algebra a(g);
    ++r.checked;
    auto expect = [&](const AlgebraElement& lhs, const AlgebraElement& rhs,
                      const std::string& what) {
      if (lhs != rhs) {
        r.fail(g, what + ": " + a.format(lhs) + " != " + a.format(rhs));
        return false;
      }
      return true;
    };
    const std::size_t n = g.vertex_count();
    for (VertexId v = 0; v < n; ++v) {
      for (VertexId w = 0; w < n; ++w) {
        if (!expect(a.multiply(a.vertex(v), a.vertex(w)),
                    v == w ? a.vertex(v) : a.zero(),
                    "(V) " + g.name(v) + " " + g.name(w))) {
          return r;
        }
      }
    }
    auto edges = finite_instances(g);
    for (EdgeInstance e : edges) {
      const auto& b = g.bundle(e.bundle);
      AlgebraElement x = a.edge(e);
      AlgebraElement xs = a.ghost(e);
      std::string name = a.instance_name(e);
      if (!expect(a.multiply(a.vertex(b.source), x), x, "(E1) s(e)e, e = " + name) ||
          !expect(a.multiply(x, a.vertex(b.target)), x, "(E1) e r(e), e = " + name) ||
          !expect(a.multiply(a.vertex(b.target), xs), xs, "(E2) r(e)e*, e = " + name) ||
          !expect(a.multiply(xs, a.vertex(b.source)), xs, "(E2) e* s(e), e = " + name)) {
        return r;
      }
      for (EdgeInstance f : edges) {
        if (!expect(a.multiply(xs, a.edge(f)), e == f ? a.vertex(b.target) : a.zero(),
                    "(CK1) " + name + "* " + a.instance_name(f))) {
          return r;
        }
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      if (!g.is_regular(v)) continue;
      AlgebraElement sum = a.zero();
      for (EdgeInstance e : edges) {
        if (g.bundle(e.bundle).source == v) {
          sum = a.add(sum, a.multiply(a.edge(e), a.ghost(e)));
        }
      }
      if (!expect(sum, a.vertex(v), "(CK2) at " + g.name(v))) return r;
    }
  }
  return r;
}

SuiteResult breaking_idempotent_suite(std::size_t cases, std::size_t max_vertices,
                                      std::uint64_t seed) {
  SuiteResult r;
  r.name = "breaking-idempotents";
  for (std::size_t i = 0; i < cases; ++i) {
    Graph g = draw(seed, i, max_vertices, 0.25);
    Algebra a(g);
    bool bad = false;
    for (const VertexSet& h : all_subsets(g.vertex_count())) {
      if (bad) break;
      if (!is_hereditary(g, h) || !is_saturated(g, h)) continue;
      for (VertexId v : breaking_vertices(g, h).members) {
        ++r.checked;
        AlgebraElement x = a.v_H_element(v, h);
        if (a.multiply(x, x) != x) {
          r.fail(g, "(v^H)^2 != v^H for v = " + g.name(v) + ", H = " + show(g, h));
          bad = true;
          break;
        }
      }
    }
  }
  return r;
}

SuiteResult associativity_suite(std::size_t samples, std::size_t max_vertices,
                                std::uint64_t seed) {
  SuiteResult r;
  r.name = "associativity";
  std::size_t graph_index = 0;
  while (r.checked < samples) {
    std::mt19937_64 rng(case_seed(seed, graph_index));
    RandomGraphOptions opt = options_for(rng, max_vertices, 0.05);
    opt.min_vertices = 1;
    opt.max_mult = 2;
    Graph g = random_graph(rng, opt);
    ++graph_index;
    Algebra a(g);
    std::vector<Monomial> basis = a.normal_monomials(2);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> terms(1, 3);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    auto random_element = [&] {
      AlgebraElement x = a.zero();
      for (int t = terms(rng); t > 0; --t) {
        x = a.add(x, a.scale(a.monomial(basis[pick(rng)]), Rational(num(rng), den(rng))));
      }
      return x;
    };
    for (int k = 0; k < 100 && r.checked < samples; ++k) {
      AlgebraElement x = random_element();
      AlgebraElement y = random_element();
      AlgebraElement z = random_element();
      ++r.checked;
      AlgebraElement left = a.multiply(a.multiply(x, y), z);
      AlgebraElement right = a.multiply(x, a.multiply(y, z));
      if (left != right) {
        r.fail(g, "(xy)z != x(yz) for x = " + a.format(x) + ", y = " + a.format(y) +
                      ", z = " + a.format(z));
        return r;
      }
    }
  }
  return r;
}

}  // namespace lpa::checks
