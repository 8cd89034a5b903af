#include "lpa/hedgehog.hpp"

#include <algorithm>
#include <set>

#include "lpa/error.hpp"

namespace lpa {

namespace {

struct Instance {
  std::size_t bundle;
  std::uint64_t member;
};

void check_inputs(const Graph& g, const VertexSet& h, const VertexSet& s) {
  g.check_members(h);
  g.check_members(s);
  if (!is_hereditary(g, h)) {
    throw PreconditionError("H is not hereditary");
  }
  BreakingSet b = breaking_vertices(g, h);
  if (!s.is_subset_of(b.members)) {
    std::string bad;
    for (VertexId v : set_difference(s, b.members)) {
      if (!bad.empty()) bad += ",";
      bad += g.name(v);
    }
    throw PreconditionError("S is not contained in B_H: " + bad);
  }
}

// One family of admissible paths. A path is grown backwards from a final
// edge; prepending an edge turns the old start into an interior range.
struct Family {
  std::vector<std::size_t> finals;      // bundles usable as the last edge
  std::vector<bool> interior_ok;        // may appear as an interior range
  std::vector<bool> extendable;         // starts of paths that can grow
};

Family family_f1(const Graph& g, const VertexSet& h, const VertexSet& s) {
  const std::size_t n = g.vertex_count();
  Family f;
  f.interior_ok.assign(n, false);
  for (VertexId v = 0; v < n; ++v) f.interior_ok[v] = !h.contains(v);
  for (std::size_t i = 0; i < g.bundles().size(); ++i) {
    const auto& b = g.bundle(i);
    if (h.contains(b.target) && !h.contains(b.source) && !s.contains(b.source)) {
      f.finals.push_back(i);
    }
  }
  return f;
}

Family family_f2(const Graph& g, const VertexSet& h, const VertexSet& s) {
  const std::size_t n = g.vertex_count();
  Family f;
  f.interior_ok.assign(n, false);
  for (VertexId v = 0; v < n; ++v) {
    f.interior_ok[v] = !h.contains(v) && !s.contains(v);
  }
  for (std::size_t i = 0; i < g.bundles().size(); ++i) {
    if (s.contains(g.bundle(i).target)) f.finals.push_back(i);
  }
  return f;
}

void compute_extendable(const Graph& g, Family& f) {
  f.extendable.assign(g.vertex_count(), false);
  std::vector<VertexId> stack;
  auto mark = [&](VertexId v) {
    if (f.interior_ok[v] && !f.extendable[v]) {
      f.extendable[v] = true;
      stack.push_back(v);
    }
  };
  for (std::size_t i : f.finals) mark(g.bundle(i).source);
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId p : g.predecessors(v)) mark(p);
  }
}

// Omega bundles through which the family has infinitely many members.
std::vector<std::string> omega_bundles(const Graph& g, const Family& f) {
  std::vector<std::string> out;
  for (std::size_t i : f.finals) {
    if (g.bundle(i).mult.is_omega()) out.push_back(g.bundle(i).id);
  }
  for (const auto& b : g.bundles()) {
    if (b.mult.is_omega() && f.extendable[b.target]) out.push_back(b.id);
  }
  return out;
}

bool has_cycle(const Graph& g, const std::vector<bool>& region) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indegree(n, 0);
  std::size_t size = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (!region[v]) continue;
    ++size;
    for (VertexId w : g.successors(v)) {
      if (region[w]) ++indegree[w];
    }
  }
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    if (region[v] && indegree[v] == 0) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (VertexId w : g.successors(queue[head])) {
      if (region[w] && --indegree[w] == 0) queue.push_back(w);
    }
  }
  return queue.size() != size;
}

bool family_finite(const Graph& g, const Family& f) {
  return omega_bundles(g, f).empty() && !has_cycle(g, f.extendable);
}

std::uint64_t member_count(const EdgeBundle& b) {
  return b.mult.is_omega() ? 0 : b.mult.count();
}

// Paths are stored first edge first; `suffix` is built back to front.
void grow(const Graph& g, const Family& f, std::vector<Instance>& suffix,
          std::size_t depth_limit, bool bounded,
          std::vector<std::vector<Instance>>& out) {
  out.emplace_back(suffix.rbegin(), suffix.rend());
  if (bounded && suffix.size() >= depth_limit) return;
  VertexId start = g.bundle(suffix.back().bundle).source;
  if (!f.interior_ok[start]) return;
  for (std::size_t i : g.in_bundles(start)) {
    const auto& b = g.bundle(i);
    for (std::uint64_t m = 1; m <= member_count(b); ++m) {
      suffix.push_back({i, m});
      grow(g, f, suffix, depth_limit, bounded, out);
      suffix.pop_back();
    }
  }
}

std::vector<std::vector<Instance>> enumerate(const Graph& g, const Family& f,
                                             std::size_t depth_limit,
                                             bool bounded) {
  std::vector<std::vector<Instance>> out;
  std::vector<Instance> suffix;
  for (std::size_t i : f.finals) {
    const auto& b = g.bundle(i);
    for (std::uint64_t m = 1; m <= member_count(b); ++m) {
      suffix.push_back({i, m});
      grow(g, f, suffix, depth_limit, bounded, out);
      suffix.pop_back();
    }
  }
  return out;
}

}  // namespace

bool hedgehog_is_finite(const Graph& g, const VertexSet& h, const VertexSet& s) {
  check_inputs(g, h, s);
  Family f1 = family_f1(g, h, s);
  Family f2 = family_f2(g, h, s);
  compute_extendable(g, f1);
  compute_extendable(g, f2);
  return family_finite(g, f1) && family_finite(g, f2);
}

HedgehogGraph build_hedgehog(const Graph& g, const VertexSet& h,
                             const VertexSet& s, std::size_t depth_limit) {
  check_inputs(g, h, s);
  if (depth_limit == 0) throw PreconditionError("depth limit must be positive");

  Family families[2] = {family_f1(g, h, s), family_f2(g, h, s)};
  bool finite = true;
  std::set<std::string> omegas;
  for (auto& f : families) {
    compute_extendable(g, f);
    finite = finite && family_finite(g, f);
    for (auto& id : omega_bundles(g, f)) omegas.insert(id);
  }

  HedgehogGraph out;
  out.h = HereditarySet::certify(g, h);
  out.s = s;
  out.finite = finite;
  if (!finite) out.truncated_at = depth_limit;
  out.omega_families.assign(omegas.begin(), omegas.end());

  std::vector<std::string> vertices;
  for (VertexId v : set_union(h, s)) vertices.push_back(g.name(v));
  std::vector<Graph::BundleSpec> bundles;
  for (const auto& b : g.bundles()) {
    if (h.contains(b.source) || (s.contains(b.source) && h.contains(b.target))) {
      bundles.push_back({b.id, g.name(b.source), g.name(b.target), b.mult});
    }
  }
  for (const auto& f : families) {
    for (const auto& path : enumerate(g, f, depth_limit, !finite)) {
      std::vector<std::string> names;
      std::string suffix;
      for (const auto& inst : path) {
        names.push_back(instance_name(g.bundle(inst.bundle), inst.member));
        if (!suffix.empty()) suffix += ".";
        suffix += names.back();
      }
      std::string vertex = "p:" + suffix;
      VertexId range = g.bundle(path.back().bundle).target;
      vertices.push_back(vertex);
      bundles.push_back({"bar:" + suffix, vertex, g.name(range)});
      out.path_vertex_table.emplace(vertex, std::move(names));
    }
  }
  out.base = Graph::build(std::move(vertices), std::move(bundles));
  return out;
}

}  // namespace lpa
