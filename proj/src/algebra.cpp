#include "lpa/algebra.hpp"

#include <algorithm>
#include <cctype>

#include "lpa/closure.hpp"
#include "lpa/error.hpp"

namespace lpa {

namespace {

void add_term(AlgebraElement::Terms& terms, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

bool is_prefix(const std::vector<EdgeInstance>& p, const std::vector<EdgeInstance>& q) {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

}  // namespace

Algebra::Algebra(const Graph& g) : g_(&g), special_(g.vertex_count()) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_regular(v)) continue;
    // Smallest edge-instance name; within a bundle that is member 1.
    auto out = g.out_bundles(v);
    std::size_t best = *std::min_element(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
      return lpa::instance_name(g.bundle(a), 1) < lpa::instance_name(g.bundle(b), 1);
    });
    special_[v] = EdgeInstance{static_cast<std::uint32_t>(best), 1};
  }
}

std::optional<EdgeInstance> Algebra::special_edge(VertexId v) const {
  return special_.at(v);
}

bool Algebra::is_canonical(const Monomial& m) const {
  if (m.real.empty() || m.ghost.empty()) return true;
  const EdgeInstance& e = m.real.back();
  if (!(e == m.ghost.back())) return true;
  auto gamma = special_[g_->bundle(e.bundle).source];
  return !(gamma && *gamma == e);
}

VertexId Algebra::left_source(const Monomial& m) const {
  return m.real.empty() ? m.anchor : g_->bundle(m.real.front().bundle).source;
}

VertexId Algebra::right_source(const Monomial& m) const {
  return m.ghost.empty() ? m.anchor : g_->bundle(m.ghost.front().bundle).source;
}

void Algebra::check(const AlgebraElement& a) const {
  if (a.fingerprint_ != g_->fingerprint()) {
    throw PreconditionError("element belongs to a different graph");
  }
}

AlgebraElement Algebra::make(AlgebraElement::Terms terms) const {
  AlgebraElement a;
  a.terms_ = std::move(terms);
  a.fingerprint_ = g_->fingerprint();
  return a;
}

void Algebra::reduce_into(Monomial m, const Rational& c,
                          AlgebraElement::Terms& out) const {
  // Each step strips one common special edge and emits canonical siblings.
  Rational coeff = c;
  while (!is_canonical(m)) {
    EdgeInstance gamma = m.real.back();
    VertexId v = g_->bundle(gamma.bundle).source;
    m.real.pop_back();
    m.ghost.pop_back();
    for (std::size_t i : g_->out_bundles(v)) {
      const auto& b = g_->bundle(i);
      for (std::uint64_t k = 1; k <= b.mult.count(); ++k) {
        EdgeInstance f{static_cast<std::uint32_t>(i), k};
        if (f == gamma) continue;
        Monomial sib = m;
        sib.real.push_back(f);
        sib.ghost.push_back(f);
        sib.anchor = b.target;
        add_term(out, sib, -coeff);
      }
    }
    m.anchor = v;
  }
  add_term(out, m, coeff);
}

AlgebraElement Algebra::zero() const { return make({}); }

AlgebraElement Algebra::scalar(const Rational& c) const {
  AlgebraElement::Terms t;
  for (VertexId v = 0; v < g_->vertex_count(); ++v) add_term(t, Monomial{{}, {}, v}, c);
  return make(std::move(t));
}

AlgebraElement Algebra::vertex(VertexId v) const {
  if (v >= g_->vertex_count()) throw PreconditionError("unknown vertex id");
  return make({{Monomial{{}, {}, v}, Rational(1)}});
}

namespace {

void check_instance(const Graph& g, EdgeInstance e) {
  if (e.bundle >= g.bundles().size()) throw PreconditionError("unknown bundle");
  const auto& b = g.bundle(e.bundle);
  if (b.mult.is_omega()) {
    throw PreconditionError("edges of omega bundle " + b.id + " cannot be used");
  }
  if (e.member < 1 || e.member > b.mult.count()) {
    throw PreconditionError("bundle " + b.id + " has no member " +
                            std::to_string(e.member));
  }
}

}  // namespace

AlgebraElement Algebra::edge(EdgeInstance e) const {
  check_instance(*g_, e);
  return make({{Monomial{{e}, {}, g_->bundle(e.bundle).target}, Rational(1)}});
}

AlgebraElement Algebra::ghost(EdgeInstance e) const {
  check_instance(*g_, e);
  return make({{Monomial{{}, {e}, g_->bundle(e.bundle).target}, Rational(1)}});
}

AlgebraElement Algebra::monomial(const Monomial& m) const {
  auto check_path = [&](const std::vector<EdgeInstance>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      check_instance(*g_, p[i]);
      if (i + 1 < p.size() &&
          g_->bundle(p[i].bundle).target != g_->bundle(p[i + 1].bundle).source) {
        throw PreconditionError("edges do not form a path");
      }
    }
    if (!p.empty() && g_->bundle(p.back().bundle).target != m.anchor) {
      throw PreconditionError("path does not end at the anchor");
    }
  };
  if (m.anchor >= g_->vertex_count()) throw PreconditionError("unknown vertex id");
  check_path(m.real);
  check_path(m.ghost);
  AlgebraElement::Terms t;
  reduce_into(m, Rational(1), t);
  return make(std::move(t));
}

AlgebraElement Algebra::add(const AlgebraElement& a, const AlgebraElement& b) const {
  check(a);
  check(b);
  AlgebraElement::Terms t = a.terms_;
  for (const auto& [m, c] : b.terms_) add_term(t, m, c);
  return make(std::move(t));
}

AlgebraElement Algebra::subtract(const AlgebraElement& a,
                                 const AlgebraElement& b) const {
  return add(a, scale(b, Rational(-1)));
}

AlgebraElement Algebra::scale(const AlgebraElement& a, const Rational& c) const {
  check(a);
  AlgebraElement::Terms t;
  if (c != 0) {
    for (const auto& [m, x] : a.terms_) t.emplace(m, x * c);
  }
  return make(std::move(t));
}

AlgebraElement Algebra::multiply(const AlgebraElement& a,
                                 const AlgebraElement& b) const {
  check(a);
  check(b);
  AlgebraElement::Terms t;
  for (const auto& [m1, c1] : a.terms_) {
    for (const auto& [m2, c2] : b.terms_) {
      if (right_source(m1) != left_source(m2)) continue;
      Monomial p;
      if (is_prefix(m1.ghost, m2.real)) {
        // β1* α2 = η with α2 = β1 η
        p.real = m1.real;
        p.real.insert(p.real.end(), m2.real.begin() + m1.ghost.size(), m2.real.end());
        p.ghost = m2.ghost;
        p.anchor = m2.anchor;
      } else if (is_prefix(m2.real, m1.ghost)) {
        // β1* α2 = η* with β1 = α2 η
        p.real = m1.real;
        p.ghost = m2.ghost;
        p.ghost.insert(p.ghost.end(), m1.ghost.begin() + m2.real.size(), m1.ghost.end());
        p.anchor = m1.anchor;
      } else {
        continue;
      }
      reduce_into(std::move(p), c1 * c2, t);
    }
  }
  return make(std::move(t));
}

AlgebraElement Algebra::star(const AlgebraElement& a) const {
  check(a);
  AlgebraElement::Terms t;
  for (const auto& [m, c] : a.terms_) t.emplace(Monomial{m.ghost, m.real, m.anchor}, c);
  return make(std::move(t));
}

AlgebraElement Algebra::normalize(const AlgebraElement& a) const {
  check(a);
  AlgebraElement::Terms t;
  for (const auto& [m, c] : a.terms_) reduce_into(m, c, t);
  return make(std::move(t));
}

AlgebraElement Algebra::v_H_element(VertexId v, const VertexSet& h) const {
  if (v >= g_->vertex_count()) throw PreconditionError("unknown vertex id");
  BreakingSet b = breaking_vertices(*g_, h);
  if (!b.members.contains(v)) {
    throw PreconditionError(g_->name(v) + " is not a breaking vertex of H");
  }
  AlgebraElement::Terms t;
  reduce_into(Monomial{{}, {}, v}, Rational(1), t);
  for (std::size_t i : bundles_leaving(*g_, v, h)) {
    const auto& bundle = g_->bundle(i);
    for (std::uint64_t k = 1; k <= bundle.mult.count(); ++k) {
      EdgeInstance e{static_cast<std::uint32_t>(i), k};
      reduce_into(Monomial{{e}, {e}, bundle.target}, Rational(-1), t);
    }
  }
  return make(std::move(t));
}

std::map<std::int64_t, AlgebraElement> Algebra::graded_components(
    const AlgebraElement& a) const {
  check(a);
  std::map<std::int64_t, AlgebraElement::Terms> parts;
  for (const auto& [m, c] : a.terms_) parts[m.degree()].emplace(m, c);
  std::map<std::int64_t, AlgebraElement> out;
  for (auto& [d, t] : parts) out.emplace(d, make(std::move(t)));
  return out;
}

std::vector<Monomial> Algebra::normal_monomials(std::size_t max_length) const {
  // Paths ending at each vertex, grown backwards.
  std::vector<std::vector<std::vector<EdgeInstance>>> ending(g_->vertex_count());
  for (VertexId w = 0; w < g_->vertex_count(); ++w) {
    std::vector<std::vector<EdgeInstance>> frontier{{}};
    ending[w].push_back({});
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::vector<std::vector<EdgeInstance>> next;
      for (const auto& p : frontier) {
        VertexId start = p.empty() ? w : g_->bundle(p.front().bundle).source;
        for (std::size_t i : g_->in_bundles(start)) {
          const auto& b = g_->bundle(i);
          if (b.mult.is_omega()) continue;
          for (std::uint64_t k = 1; k <= b.mult.count(); ++k) {
            std::vector<EdgeInstance> q;
            q.reserve(p.size() + 1);
            q.push_back({static_cast<std::uint32_t>(i), k});
            q.insert(q.end(), p.begin(), p.end());
            next.push_back(std::move(q));
          }
        }
      }
      ending[w].insert(ending[w].end(), next.begin(), next.end());
      frontier = std::move(next);
    }
  }
  std::vector<Monomial> out;
  for (VertexId w = 0; w < g_->vertex_count(); ++w) {
    for (const auto& alpha : ending[w]) {
      for (const auto& beta : ending[w]) {
        Monomial m{alpha, beta, w};
        if (is_canonical(m)) out.push_back(std::move(m));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Algebra::instance_name(EdgeInstance e) const {
  return lpa::instance_name(g_->bundle(e.bundle), e.member);
}

std::string Algebra::format(const Monomial& m) const {
  auto path = [&](const std::vector<EdgeInstance>& p) {
    std::string s;
    for (const auto& e : p) {
      if (!s.empty()) s += " ";
      s += instance_name(e);
    }
    return s;
  };
  if (m.real.empty() && m.ghost.empty()) return g_->name(m.anchor);
  std::string s = path(m.real);
  if (!m.ghost.empty()) {
    if (!s.empty()) s += " ";
    s += "(" + path(m.ghost) + ")*";
  }
  return s;
}

std::string Algebra::format(const Rational& c) const {
  return c.str();
}

std::string Algebra::format(const AlgebraElement& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Rational shown = c;
    if (first) {
      first = false;
    } else if (c < 0) {
      s += " - ";
      shown = -c;
    } else {
      s += " + ";
    }
    s += format(shown) + " · " + format(m);
  }
  return s;
}

namespace {

class ExprParser {
 public:
  ExprParser(const Algebra& alg, std::string_view text) : alg_(alg), text_(text) {}

  AlgebraElement run() {
    AlgebraElement e = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError(pos_, what);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_.substr(pos_, 2) == "\xC2\xB7") {
        pos_ += 2;
      } else {
        break;
      }
    }
  }

  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  static bool is_operator(char c) {
    return c == '(' || c == ')' || c == '+' || c == '-' || c == '*' || c == '/';
  }

  bool at_atom() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || !is_operator(c);
  }

  AlgebraElement expr() {
    AlgebraElement acc = alg_.zero();
    bool negate = false;
    if (at('+')) {
      ++pos_;
    } else if (at('-')) {
      ++pos_;
      negate = true;
    }
    while (true) {
      AlgebraElement t = term();
      acc = negate ? alg_.subtract(acc, t) : alg_.add(acc, t);
      if (at('+')) {
        negate = false;
      } else if (at('-')) {
        negate = true;
      } else {
        return acc;
      }
      ++pos_;
    }
  }

  AlgebraElement term() {
    if (!at_atom()) fail(pos_ < text_.size() ? "expected a factor" : "unexpected end of expression");
    AlgebraElement acc = factor();
    while (at_atom()) acc = alg_.multiply(acc, factor());
    return acc;
  }

  AlgebraElement factor() {
    AlgebraElement a = atom();
    while (at('*')) {
      ++pos_;
      a = alg_.star(a);
    }
    return a;
  }

  std::string word() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_operator(text_[pos_]) &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_.substr(pos_, 2) != "\xC2\xB7") {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
  }

  AlgebraElement atom() {
    skip_space();
    if (at('(')) {
      std::size_t open = pos_++;
      AlgebraElement e = expr();
      if (!at(')')) {
        pos_ = std::max(pos_, open);
        fail("missing ')'");
      }
      ++pos_;
      return e;
    }
    std::size_t start = pos_;
    std::string w = word();
    if (all_digits(w)) {
      Rational value{boost::multiprecision::cpp_int(w)};
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t dpos = pos_;
        std::string d = word();
        if (!all_digits(d)) {
          pos_ = dpos;
          fail("expected a denominator");
        }
        boost::multiprecision::cpp_int den(d);
        if (den == 0) {
          pos_ = dpos;
          fail("zero denominator");
        }
        value /= Rational(den);
      }
      return alg_.scalar(value);
    }
    return resolve(w, start);
  }

  AlgebraElement resolve(const std::string& w, std::size_t start) {
    const Graph& g = alg_.graph();
    auto error = [&](const std::string& what) -> AlgebraElement {
      pos_ = start;
      fail(what);
    };
    if (auto v = g.find_vertex(w)) return alg_.vertex(*v);
    if (auto b = g.find_bundle(w)) {
      const auto& bundle = g.bundle(*b);
      if (bundle.mult.is_omega()) return error("edges of omega bundle '" + w + "' cannot be used");
      if (bundle.mult.count() != 1) {
        return error("bundle '" + w + "' has " + bundle.mult.to_string() +
                     " edges; name one as " + w + "[i]");
      }
      return alg_.edge({static_cast<std::uint32_t>(*b), 1});
    }
    auto open = w.rfind('[');
    if (open != std::string::npos && w.back() == ']') {
      std::string id = w.substr(0, open);
      std::string idx = w.substr(open + 1, w.size() - open - 2);
      if (auto b = g.find_bundle(id); b && all_digits(idx)) {
        const auto& bundle = g.bundle(*b);
        if (bundle.mult.is_omega()) return error("edges of omega bundle '" + id + "' cannot be used");
        std::uint64_t k = 0;
        if (idx.size() <= 19) k = std::stoull(idx);
        if (k < 1 || k > bundle.mult.count()) {
          return error("bundle '" + id + "' has no member " + idx);
        }
        return alg_.edge({static_cast<std::uint32_t>(*b), k});
      }
    }
    if (w.empty()) return error("expected a factor");
    return error("unknown generator '" + w + "'");
  }

  const Algebra& alg_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement Algebra::parse(std::string_view expr) const {
  return ExprParser(*this, expr).run();
}

}  // namespace lpa
