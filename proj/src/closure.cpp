#include "lpa/closure.hpp"

#include <algorithm>
#include <deque>

#include "lpa/error.hpp"

namespace lpa {

namespace {

void require_hereditary(const Graph& g, const VertexSet& h) {
  g.check_members(h);
  if (!is_hereditary(g, h)) {
    throw PreconditionError("vertex set is not hereditary");
  }
}

}  // namespace

HereditarySet HereditarySet::certify(const Graph& g, VertexSet members) {
  g.check_members(members);
  HereditarySet h;
  h.hereditary_ = lpa::is_hereditary(g, members);
  h.saturated_ = lpa::is_saturated(g, members);
  h.members_ = std::move(members);
  return h;
}

bool is_hereditary(const Graph& g, const VertexSet& x) {
  auto in = x.mask(g.vertex_count());
  for (VertexId v : x) {
    for (VertexId w : g.successors(v)) {
      if (!in[w]) return false;
    }
  }
  return true;
}

namespace {

bool absorbed(const Graph& g, VertexId v, const VertexMask& in) {
  if (!g.is_regular(v)) return false;
  auto succ = g.successors(v);
  return std::all_of(succ.begin(), succ.end(),
                     [&](VertexId w) { return in[w]; });
}

}  // namespace

bool is_saturated(const Graph& g, const VertexSet& x) {
  auto in = x.mask(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!in[v] && absorbed(g, v, in)) return false;
  }
  return true;
}

VertexSet saturate_once(const Graph& g, const VertexSet& x) {
  g.check_members(x);
  auto in = x.mask(g.vertex_count());
  auto out = in;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!in[v] && absorbed(g, v, in)) out[v] = true;
  }
  return VertexSet::from_mask(out);
}

ClosureTrace hs_closure_traced(const Graph& g, const VertexSet& seed) {
  ClosureTrace trace;
  VertexSet current = reachable(g, seed);
  for (;;) {
    ++trace.rounds;
    VertexSet next = saturate_once(g, current);
    if (next == current) break;
    current = std::move(next);
  }
  trace.closure = HereditarySet::certify(g, std::move(current));
  if (!trace.closure.is_hereditary() || !trace.closure.is_saturated()) {
    throw InvariantViolation("hereditary saturated closure failed certification");
  }
  return trace;
}

HereditarySet hs_closure(const Graph& g, const VertexSet& seed) {
  return hs_closure_traced(g, seed).closure;
}

std::vector<std::size_t> bundles_leaving(const Graph& g, VertexId v,
                                         const VertexSet& h) {
  std::vector<std::size_t> out;
  for (std::size_t b : g.out_bundles(v)) {
    if (!h.contains(g.bundle(b).target)) out.push_back(b);
  }
  return out;
}

BreakingSet breaking_vertices(const Graph& g, const VertexSet& h) {
  require_hereditary(g, h);
  BreakingSet result;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (h.contains(v) || !g.is_infinite_emitter(v)) continue;
    auto leaving = bundles_leaving(g, v, h);
    bool finite = std::none_of(leaving.begin(), leaving.end(), [&](std::size_t b) {
      return g.bundle(b).mult.is_omega();
    });
    if (!finite) continue;
    result.members.insert(v);
    if (leaving.empty()) result.zero_outside.insert(v);
  }
  return result;
}

Graph restriction_graph(const Graph& g, const VertexSet& h) {
  require_hereditary(g, h);
  std::vector<std::string> vertices = g.names(h);
  std::vector<Graph::BundleSpec> bundles;
  for (const auto& b : g.bundles()) {
    if (h.contains(b.source)) {
      bundles.push_back({b.id, g.name(b.source), g.name(b.target), b.mult});
    }
  }
  return Graph::build(std::move(vertices), std::move(bundles));
}

DensityVerdict density_check(const Graph& g, const VertexSet& target) {
  g.check_members(target);
  const std::size_t n = g.vertex_count();
  DensityVerdict verdict;
  verdict.witness.assign(n, {});
  // Backward BFS from the target; next_hop gives a shortest path forward.
  constexpr VertexId kNone = static_cast<VertexId>(-1);
  std::vector<VertexId> next_hop(n, kNone);
  VertexMask reached = target.mask(n);
  std::deque<VertexId> queue(target.begin(), target.end());
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId u : g.predecessors(v)) {
      if (!reached[u]) {
        reached[u] = true;
        next_hop[u] = v;
        queue.push_back(u);
      }
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (!reached[v]) {
      verdict.dense = false;
      verdict.failing.insert(v);
      continue;
    }
    auto& path = verdict.witness[v];
    for (VertexId u = v; u != kNone; u = next_hop[u]) path.push_back(u);
  }
  return verdict;
}

}  // namespace lpa
