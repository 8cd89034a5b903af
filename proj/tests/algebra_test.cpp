#include <doctest.h>

#include <random>
#include <set>

#include "lpa/algebra.hpp"
#include "lpa/checks.hpp"
#include "lpa/closure.hpp"
#include "lpa/error.hpp"
#include "support.hpp"

using namespace lpa;
using namespace lpa::test;

namespace {

Graph line(std::size_t n) {
  std::string text = "vertices";
  for (std::size_t i = 1; i <= n; ++i) text += " v" + std::to_string(i);
  text += "\n";
  for (std::size_t i = 1; i < n; ++i) {
    text += "edge e" + std::to_string(i) + " v" + std::to_string(i) + " v" +
            std::to_string(i + 1) + "\n";
  }
  return parse_graph(text);
}

// Matrix-unit representation of the line algebra: v_i -> E_ii, e -> E_{s(e), r(e)}
// and e* -> E_{r(e), s(e)}. It is faithful, so it checks normal forms
// independently of the rewrite.
using Matrix = std::vector<std::vector<Rational>>;

Matrix zeros(std::size_t n) { return Matrix(n, std::vector<Rational>(n)); }

Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m = zeros(n);
  m[i][j] = 1;
  return m;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix add(const Matrix& a, const Matrix& b, const Rational& scale = 1) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += scale * b[i][j];
  return c;
}

Matrix represent(const Graph& g, const AlgebraElement& a) {
  const std::size_t n = g.vertex_count();
  Matrix out = zeros(n);
  for (const auto& [m, c] : a.terms()) {
    Matrix t = unit(n, m.anchor, m.anchor);
    if (!m.real.empty()) {
      t = unit(n, g.bundle(m.real.front().bundle).source, g.bundle(m.real.front().bundle).source);
    }
    for (const auto& e : m.real) {
      t = mul(t, unit(n, g.bundle(e.bundle).source, g.bundle(e.bundle).target));
    }
    for (auto it = m.ghost.rbegin(); it != m.ghost.rend(); ++it) {
      t = mul(t, unit(n, g.bundle(it->bundle).target, g.bundle(it->bundle).source));
    }
    out = add(out, t, c);
  }
  return out;
}

// Random element of the form Σ c · (product of generators).
std::string random_expression(std::mt19937_64& rng, const Graph& g) {
  std::vector<std::string> gens;
  for (VertexId v = 0; v < g.vertex_count(); ++v) gens.push_back(g.name(v));
  for (const auto& b : g.bundles()) {
    if (b.mult.is_omega()) continue;
    for (std::uint64_t m = 1; m <= b.mult.count(); ++m) {
      std::string name = instance_name(b, m);
      gens.push_back(name);
      gens.push_back(name + "*");
    }
  }
  std::uniform_int_distribution<int> terms(1, 3), len(1, 3), coef(-3, 3);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::string out;
  for (int t = terms(rng); t > 0; --t) {
    int c = coef(rng);
    out += (c < 0 ? " - " : " + ") + std::to_string(c < 0 ? -c : c);
    for (int k = len(rng); k > 0; --k) out += " " + gens[pick(rng)];
  }
  return out;
}

}  // namespace

TEST_CASE("parse examples") {
  Graph l2 = fixture("line2");
  Algebra a2(l2);
  CHECK(a2.format(a2.parse("e1* e1")) == "1 · v2");
  CHECK(a2.parse("e1* e1") == a2.vertex(l2.vertex("v2")));
  CHECK(a2.parse("v1 v1") == a2.vertex(l2.vertex("v1")));
  CHECK(a2.parse("v1 v2").is_zero());
  CHECK(a2.parse("e1 e1").is_zero());
  CHECK(a2.parse("1/2 v1 + 1/2 v1") == a2.vertex(0));
  CHECK(a2.parse("(e1 + v1)*") == a2.parse("e1* + v1"));
  CHECK(a2.parse("2 · e1") == a2.scale(a2.parse("e1"), 2));

  Graph g1 = fixture("chain3");
  Algebra a1(g1);
  CHECK(a1.parse("a1* a2").is_zero());
  CHECK(a1.parse("a1* a1") == a1.parse("v1"));
  CHECK(a1.format(a1.zero()) == "0");
}

TEST_CASE("expression errors") {
  Graph g7 = fixture("omega-h");
  Algebra a(g7);
  CHECK_THROWS_AS(a.parse("om"), ExpressionError);
  CHECK_THROWS_AS(a.parse("nope"), ExpressionError);
  CHECK_THROWS_AS(a.parse("(u"), ExpressionError);
  CHECK_THROWS_AS(a.parse("u +"), ExpressionError);
  CHECK_THROWS_AS(a.parse("1/0"), ExpressionError);
  Graph p = parse_graph("vertices a\nedge p a a x2\n");
  Algebra ap(p);
  CHECK_THROWS_AS(ap.parse("p"), ExpressionError);
  CHECK_NOTHROW(ap.parse("p[2]"));
  CHECK_THROWS_AS(ap.parse("p[3]"), ExpressionError);
}

TEST_CASE("multiply examples") {
  Graph l2 = fixture("line2");
  Algebra a2(l2);
  CHECK(a2.multiply(a2.parse("e1"), a2.parse("e1*")) == a2.parse("v1"));

  Graph g1 = fixture("chain3");
  Algebra a1(g1);
  CHECK(a1.multiply(a1.parse("v2"), a1.parse("f2")) == a1.parse("f2"));
  CHECK(a1.multiply(a1.parse("v1"), a1.parse("f2")).is_zero());

  Graph g5 = fixture("twoloop-oneloop");
  Algebra a5(g5);
  CHECK(a5.multiply(a5.parse("a1 a1*"), a5.parse("a2 a2*")).is_zero());
  CHECK_THROWS_AS(a1.multiply(a1.parse("v1"), a2.parse("v1")), PreconditionError);
}

TEST_CASE("normal form at a special edge") {
  Graph g1 = fixture("chain3");
  Algebra a(g1);
  AlgebraElement x = a.parse("a1 a1*");
  CHECK(a.format(x) == "1 · v1 - 1 · a2 (a2)* - 1 · f1 (f1)*");
  CHECK(a.normalize(x) == x);
  for (const auto& [m, c] : x.terms()) CHECK(a.is_canonical(m));
  // Both forms act the same way on every generator from either side.
  auto rhs = a.subtract(a.subtract(a.parse("v1"), a.parse("a2 a2*")), a.parse("f1 f1*"));
  CHECK(x == rhs);
  for (const char* gen : {"v1", "v2", "a1", "a2", "f1", "a1*", "f1*", "b1"}) {
    CHECK(a.multiply(x, a.parse(gen)) == a.multiply(rhs, a.parse(gen)));
    CHECK(a.multiply(a.parse(gen), x) == a.multiply(a.parse(gen), rhs));
  }
  REQUIRE(a.special_edge(g1.vertex("v1")));
  CHECK(a.instance_name(*a.special_edge(g1.vertex("v1"))) == "a1");
  CHECK(a.normalize(a.zero()).is_zero());

  // "aA" sorts before "a[1]".
  Graph h = parse_graph("vertices v\nedge a v v x2\nedge aA v v\n");
  Algebra ah(h);
  CHECK(ah.instance_name(*ah.special_edge(0)) == "aA");
  CHECK(ah.format(ah.parse("aA aA*")) == "1 · v - 1 · a[1] (a[1])* - 1 · a[2] (a[2])*");
}

TEST_CASE("v^H elements") {
  Graph g7 = fixture("omega-h");
  Algebra a(g7);
  VertexId u = g7.vertex("u");
  auto vh = a.v_H_element(u, vs(g7, {"h"}));
  CHECK(vh == a.parse("u - f f*"));
  CHECK(a.multiply(vh, vh) == vh);
  CHECK(a.v_H_element(u, vs(g7, {"h", "x"})) == a.parse("u"));
  CHECK_THROWS_AS(a.v_H_element(g7.vertex("h"), vs(g7, {"h"})), PreconditionError);
  CHECK_THROWS_AS(a.v_H_element(u, vs(g7, {"x"})), PreconditionError);
}

TEST_CASE("graded components") {
  Graph l2 = fixture("line2");
  Algebra a(l2);
  auto parts = a.graded_components(a.parse("e1 + v1"));
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(1) == a.parse("e1"));
  CHECK(parts.at(0) == a.parse("v1"));
  auto vp = a.graded_components(a.parse("v2"));
  REQUIRE(vp.size() == 1);
  CHECK(vp.at(0) == a.parse("v2"));

  Graph g1 = fixture("chain3");
  Algebra a1(g1);
  auto q = a1.graded_components(a1.parse("a1 a2*"));
  REQUIRE(q.size() == 1);
  CHECK(q.count(0));
  CHECK(a1.graded_components(a1.zero()).empty());
}

TEST_CASE("normal monomials of lines") {
  for (std::size_t n : {2, 3, 4}) {
    Graph g = line(n);
    Algebra a(g);
    auto basis = a.normal_monomials(n);
    CHECK(basis.size() == n * n);
    // Their images are the n^2 distinct matrix units.
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& m : basis) {
      AlgebraElement e = a.monomial(m);
      Matrix r = represent(g, e);
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (r[i][j] != 0) {
            ++nonzero;
            seen.insert({i, j});
            CHECK(r[i][j] == 1);
          }
      CHECK(nonzero == 1);
    }
    CHECK(seen.size() == n * n);
    CHECK(a.normal_monomials(n + 2).size() == n * n);
  }
}

TEST_CASE("line algebra matches the matrix representation") {
  std::mt19937_64 rng(61);
  for (std::size_t n : {2, 3, 4}) {
    Graph g = line(n);
    Algebra a(g);
    for (int i = 0; i < 300; ++i) {
      std::string x = random_expression(rng, g);
      std::string y = random_expression(rng, g);
      AlgebraElement ex = a.parse(x), ey = a.parse(y);
      Matrix mx = represent(g, ex), my = represent(g, ey);
      CHECK(represent(g, a.multiply(ex, ey)) == mul(mx, my));
      CHECK(represent(g, a.add(ex, ey)) == add(mx, my));
      // Faithful: equal images only for equal elements.
      CHECK((mul(mx, my) == mul(my, mx)) ==
            (a.multiply(ex, ey) == a.multiply(ey, ex)));
    }
  }
}

TEST_CASE("Leavitt relations on fixtures") {
  for (const char* name : {"chain3", "chain3sink", "six", "fork", "twoloop-oneloop",
                           "line2", "line3", "line4", "omega-h"}) {
    Graph g = fixture(name);
    Algebra a(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (VertexId w = 0; w < g.vertex_count(); ++w) {
        auto vw = a.multiply(a.vertex(v), a.vertex(w));
        CHECK(vw == (v == w ? a.vertex(v) : a.zero()));
      }
      if (g.is_regular(v)) {
        AlgebraElement sum = a.zero();
        for (std::size_t i : g.out_bundles(v)) {
          for (std::uint64_t m = 1; m <= g.bundle(i).mult.count(); ++m) {
            EdgeInstance e{static_cast<std::uint32_t>(i), m};
            sum = a.add(sum, a.multiply(a.edge(e), a.ghost(e)));
          }
        }
        CHECK(sum == a.vertex(v));
      }
    }
    std::vector<EdgeInstance> edges;
    for (std::size_t i = 0; i < g.bundles().size(); ++i) {
      const auto& b = g.bundle(i);
      if (b.mult.is_omega()) continue;
      for (std::uint64_t m = 1; m <= b.mult.count(); ++m) {
        edges.push_back({static_cast<std::uint32_t>(i), m});
      }
    }
    for (const auto& e : edges) {
      const auto& b = g.bundle(e.bundle);
      auto x = a.edge(e), xs = a.ghost(e);
      CHECK(a.multiply(a.vertex(b.source), x) == x);
      CHECK(a.multiply(x, a.vertex(b.target)) == x);
      CHECK(a.multiply(a.vertex(b.target), xs) == xs);
      CHECK(a.multiply(xs, a.vertex(b.source)) == xs);
      CHECK(a.star(x) == xs);
      for (const auto& f : edges) {
        auto prod = a.multiply(xs, a.edge(f));
        CHECK(prod == (e == f ? a.vertex(b.target) : a.zero()));
      }
    }
  }
}

TEST_CASE("algebra laws on random graphs") {
  std::mt19937_64 rng(62);
  checks::RandomGraphOptions opt;
  opt.max_vertices = 4;
  opt.max_mult = 2;
  opt.omega_probability = 0.1;
  for (int i = 0; i < 300; ++i) {
    Graph g = checks::random_graph(rng, opt);
    if (g.vertex_count() == 0) continue;
    Algebra a(g);
    auto x = a.parse(random_expression(rng, g));
    auto y = a.parse(random_expression(rng, g));
    auto z = a.parse(random_expression(rng, g));
    CHECK(a.multiply(a.multiply(x, y), z) == a.multiply(x, a.multiply(y, z)));
    CHECK(a.multiply(x, a.add(y, z)) == a.add(a.multiply(x, y), a.multiply(x, z)));
    CHECK(a.star(a.star(x)) == x);
    CHECK(a.star(a.multiply(x, y)) == a.multiply(a.star(y), a.star(x)));
    CHECK(a.multiply(a.scalar(1), x) == x);
    CHECK(a.normalize(x) == x);
    // Grading: components sum back and degrees add under products.
    auto parts = a.graded_components(x);
    AlgebraElement sum = a.zero();
    for (const auto& [d, p] : parts) {
      sum = a.add(sum, p);
      for (const auto& [m, c] : p.terms()) CHECK(m.degree() == d);
    }
    CHECK(sum == x);
    auto qy = a.graded_components(y);
    for (const auto& [dx, px] : parts) {
      for (const auto& [dy, py] : qy) {
        AlgebraElement prod = a.multiply(px, py);
        for (const auto& [m, c] : prod.terms()) CHECK(m.degree() == dx + dy);
      }
    }
  }
}

TEST_CASE("v^H is idempotent for every breaking vertex") {
  std::mt19937_64 rng(63);
  checks::RandomGraphOptions opt;
  opt.max_vertices = 5;
  opt.omega_probability = 0.3;
  int seen = 0;
  for (int i = 0; i < 200; ++i) {
    Graph g = checks::random_graph(rng, opt);
    Algebra a(g);
    const std::size_t n = g.vertex_count();
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      VertexSet h;
      for (VertexId v = 0; v < n; ++v) {
        if (bits >> v & 1u) h.insert(v);
      }
      if (!is_hereditary(g, h) || !is_saturated(g, h)) continue;
      for (VertexId v : breaking_vertices(g, h).members) {
        auto e = a.v_H_element(v, h);
        CHECK(a.multiply(e, e) == e);
        CHECK(a.star(e) == e);
        ++seen;
      }
    }
  }
  CHECK(seen > 50);
}
