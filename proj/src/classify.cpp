#include "lpa/classify.hpp"

#include <algorithm>

#include "lpa/closure.hpp"
#include "lpa/error.hpp"

namespace lpa {

std::string_view to_string(CspClass c) noexcept {
  switch (c) {
    case CspClass::Zero:
      return "0";
    case CspClass::One:
      return "1";
    case CspClass::TwoPlus:
      return "2+";
  }
  return "?";
}

namespace {

// Vertices reachable from `v` by a path of positive length that does not
// return to `v` before its end (`v` itself is excluded).
VertexMask reach_avoiding(const Graph& g, VertexId v, bool forward) {
  VertexMask seen(g.vertex_count(), false);
  boost::container::small_vector<VertexId, 16> stack;
  auto push_next = [&](VertexId x) {
    for (VertexId w : forward ? g.successors(x) : g.predecessors(x)) {
      if (w != v && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  };
  push_next(v);
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    push_next(x);
  }
  return seen;
}

}  // namespace

CspClass csp_class(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) {
    throw PreconditionError("unknown vertex id " + std::to_string(v));
  }
  const std::size_t n = g.vertex_count();
  auto fwd = reach_avoiding(g, v, true);
  auto bwd = reach_avoiding(g, v, false);
  VertexMask region(n, false);
  for (std::size_t x = 0; x < n; ++x) region[x] = fwd[x] && bwd[x];

  auto relevant_end = [&](VertexId x) { return x == v || region[x]; };
  VertexMask relevant(g.bundles().size(), false);
  bool any = false;
  for (std::size_t i = 0; i < g.bundles().size(); ++i) {
    const auto& b = g.bundle(i);
    if (relevant_end(b.source) && relevant_end(b.target)) {
      relevant[i] = true;
      any = true;
      if (b.mult.is_omega() || b.mult.count() >= 2) return CspClass::TwoPlus;
    }
  }
  if (!any) return CspClass::Zero;
  auto targets = [&](VertexId x, auto&& f) {
    for (std::size_t i : g.out_bundles(x)) {
      if (relevant[i]) f(g.bundle(i).target);
    }
  };

  // Kahn's algorithm on the region; leftovers mean a cycle off the base.
  using Counts = boost::container::small_vector<std::uint32_t, 16>;
  Counts indegree(n, 0);
  for (std::size_t i = 0; i < g.bundles().size(); ++i) {
    const auto& b = g.bundle(i);
    if (relevant[i] && b.source != v && b.target != v) ++indegree[b.target];
  }
  Counts order;
  for (VertexId x = 0; x < n; ++x) {
    if (region[x] && indegree[x] == 0) order.push_back(x);
  }
  std::size_t region_size =
      static_cast<std::size_t>(std::count(region.begin(), region.end(), true));
  for (std::size_t head = 0; head < order.size(); ++head) {
    targets(order[head], [&](VertexId t) {
      if (t != v && --indegree[t] == 0) order.push_back(t);
    });
  }
  if (order.size() != region_size) return CspClass::TwoPlus;

  auto capped = [](std::uint32_t a) { return std::min<std::uint32_t>(a, 2); };
  Counts ways(n, 0);
  std::uint32_t closed = 0;
  auto spread = [&](VertexId from, std::uint32_t count) {
    targets(from, [&](VertexId t) {
      if (t == v) {
        closed = capped(closed + count);
      } else {
        ways[t] = capped(ways[t] + count);
      }
    });
  };
  spread(v, 1);
  for (VertexId x : order) {
    if (ways[x] > 0) spread(x, ways[x]);
  }
  if (closed >= 2) return CspClass::TwoPlus;
  return closed == 1 ? CspClass::One : CspClass::Zero;
}

namespace {

struct Context {
  const Graph& g;
  Condensation cond;
  std::vector<CspClass> csp;

  explicit Context(const Graph& graph) : g(graph), cond(condense(graph)) {
    csp.reserve(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      csp.push_back(csp_class(g, v));
    }
  }

  explicit Context(const Graph& graph, bool /*skip_csp*/)
      : g(graph), cond(condense(graph)) {}

  VertexSet on_cycle() const {
    std::vector<VertexId> out;
    for (std::size_t c = 0; c < cond.size(); ++c) {
      if (!cond.trivial[c]) {
        out.insert(out.end(), cond.components[c].begin(),
                   cond.components[c].end());
      }
    }
    return VertexSet::from_unsorted(std::move(out));
  }

  VertexSet with_csp(CspClass k) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (csp[v] == k) out.push_back(v);
    }
    return VertexSet::from_unsorted(std::move(out));
  }
};

VertexSet all_vertices(const Graph& g) { return VertexSet::all(g.vertex_count()); }

VertexSet line_points_impl(const Context& cx) {
  const Graph& g = cx.g;
  VertexSet bad = cx.on_cycle();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.is_bifurcation(v)) bad.insert(v);
  }
  return set_difference(all_vertices(g), coreachable(g, bad));
}

VertexSet cycles_without_exits_impl(const Context& cx) {
  const Graph& g = cx.g;
  std::vector<VertexId> out;
  for (std::size_t c = 0; c < cx.cond.size(); ++c) {
    if (cx.cond.trivial[c]) continue;
    const auto& comp = cx.cond.components[c];
    bool exitless = std::all_of(comp.begin(), comp.end(), [&](VertexId v) {
      return !g.is_infinite_emitter(v) && g.finite_out_degree(v) == 1;
    });
    if (exitless) out.insert(out.end(), comp.begin(), comp.end());
  }
  return VertexSet::from_unsorted(std::move(out));
}

VertexSet extreme_cycles_impl(const Context& cx) {
  const Graph& g = cx.g;
  std::vector<VertexId> out;
  for (std::size_t c = 0; c < cx.cond.size(); ++c) {
    if (cx.cond.trivial[c] || !cx.cond.terminal[c]) continue;
    const auto& comp = cx.cond.components[c];
    bool has_exit = std::any_of(comp.begin(), comp.end(),
                                [&](VertexId v) { return g.is_bifurcation(v); });
    if (has_exit) out.insert(out.end(), comp.begin(), comp.end());
  }
  return VertexSet::from_unsorted(std::move(out));
}

VertexSet b_infinity_impl(const Graph& g) {
  VertexSet emitters;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.is_infinite_emitter(v)) emitters.insert(v);
  }
  return coreachable(g, emitters);
}

VertexSet properly_infinite_impl(const Context& cx) {
  const Graph& g = cx.g;
  VertexSet two_plus = cx.with_csp(CspClass::TwoPlus);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    VertexSet witnesses = set_intersection(reachable(g, v), two_plus);
    if (witnesses.empty()) continue;
    if (hs_closure(g, witnesses).members().contains(v)) out.push_back(v);
  }
  return VertexSet::from_unsorted(std::move(out));
}

VertexSet breakers(const Graph& g) {
  VertexSet out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (can_break(g, v)) out.insert(v);
  }
  return out;
}

VertexSet p_ppi_impl(const Graph& g, const VertexSet& p_pi) {
  // v qualifies iff nothing outside P_pi and no breaker is reachable from v.
  VertexSet poison = set_union(set_difference(all_vertices(g), p_pi), breakers(g));
  return set_difference(all_vertices(g), coreachable(g, poison));
}

PpiSplit split_impl(const Graph& g, const VertexSet& p_ec, const VertexSet& ppi) {
  PpiSplit s;
  VertexSet below = reachable(g, set_difference(ppi, p_ec));
  s.p_ec_prime = set_intersection(p_ec, below);
  s.p_pec = set_difference(p_ec, s.p_ec_prime);
  s.p_prime = set_difference(ppi, s.p_pec);
  return s;
}

VertexSet p_K_impl(const Context& cx) {
  return set_difference(all_vertices(cx.g),
                        coreachable(cx.g, cx.with_csp(CspClass::One)));
}

}  // namespace

VertexSet line_points(const Graph& g) { return line_points_impl(Context(g, true)); }

VertexSet cycles_without_exits(const Graph& g) {
  return cycles_without_exits_impl(Context(g, true));
}

VertexSet extreme_cycles(const Graph& g) {
  return extreme_cycles_impl(Context(g, true));
}

VertexSet b_infinity(const Graph& g) { return b_infinity_impl(g); }

VertexSet properly_infinite(const Graph& g) {
  return properly_infinite_impl(Context(g));
}

bool can_break(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) {
    throw PreconditionError("unknown vertex id " + std::to_string(v));
  }
  if (!g.is_infinite_emitter(v)) return false;
  VertexSet omega_targets;
  for (std::size_t b : g.out_bundles(v)) {
    if (g.bundle(b).mult.is_omega()) omega_targets.insert(g.bundle(b).target);
  }
  return !reachable(g, omega_targets).contains(v);
}

VertexSet p_ppi(const Graph& g) { return p_ppi_impl(g, properly_infinite(g)); }

PpiSplit split_ppi(const Graph& g) {
  return split_impl(g, extreme_cycles(g), p_ppi(g));
}

bool condition_K(const Graph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (csp_class(g, v) == CspClass::One) return false;
  }
  return true;
}

bool condition_L(const Graph& g) { return cycles_without_exits(g).empty(); }

VertexSet p_K(const Graph& g) { return p_K_impl(Context(g)); }

VertexSet p_ex(const Graph& g) {
  VertexSet k = p_K(g);
  return set_union(k, breaking_vertices(g, k).members);
}

Classification classify(const Graph& g) {
  Context cx(g);
  Classification c;
  c.p_l = line_points_impl(cx);
  c.p_c = cycles_without_exits_impl(cx);
  c.p_ec = extreme_cycles_impl(cx);
  c.p_binf = b_infinity_impl(g);
  c.p_pi = properly_infinite_impl(cx);
  c.p_ppi = p_ppi_impl(g, c.p_pi);
  auto split = split_impl(g, c.p_ec, c.p_ppi);
  c.p_ec_prime = std::move(split.p_ec_prime);
  c.p_pec = std::move(split.p_pec);
  c.p_prime = std::move(split.p_prime);
  c.p_K = p_K_impl(cx);
  auto breaking = breaking_vertices(g, c.p_K);
  c.exchange_breaking = breaking.members;
  c.exchange_breaking_zero_outside = breaking.zero_outside;
  c.p_ex = set_union(c.p_K, breaking.members);
  c.condition_K = cx.with_csp(CspClass::One).empty();
  c.condition_L = c.p_c.empty();
  return c;
}

}  // namespace lpa
