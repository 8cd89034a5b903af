#include <algorithm>
#include <functional>
#include <numeric>

#include "lpa/checks.hpp"

namespace lpa::checks {

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Graph random_graph(std::mt19937_64& rng, const RandomGraphOptions& opt) {
  std::uniform_int_distribution<std::size_t> size(opt.min_vertices, opt.max_vertices);
  std::uniform_int_distribution<std::uint64_t> mult(1, std::max<std::uint64_t>(opt.max_mult, 1));
  std::bernoulli_distribution has_edge(opt.edge_probability);
  std::bernoulli_distribution omega(opt.omega_probability);
  const std::size_t n = size(rng);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<Graph::BundleSpec> bundles;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (!has_edge(rng)) continue;
      Multiplicity m = omega(rng) ? Multiplicity::omega() : Multiplicity::finite(mult(rng));
      bundles.push_back({"e" + std::to_string(bundles.size()), names[s], names[t], m});
    }
  }
  return Graph::build(std::move(names), std::move(bundles));
}

namespace {

// Vertices from which `v` is reachable by a path of length >= 0.
VertexMask can_reach(const Graph& g, VertexId v) {
  return coreachable(g, VertexSet{v}).mask(g.vertex_count());
}

}  // namespace

CspClass csp_oracle(const Graph& g, VertexId v) {
  const std::size_t n = g.vertex_count();
  const std::size_t limit = 2 * n;
  VertexMask back = can_reach(g, v);
  std::size_t found = 0;
  // Each omega bundle is walked as two distinct edges; that is enough to
  // distinguish one closed path from two.
  std::function<void(VertexId, std::size_t)> walk = [&](VertexId x, std::size_t len) {
    if (found >= 2) return;
    for (std::size_t i : g.out_bundles(x)) {
      const auto& b = g.bundle(i);
      std::uint64_t members = b.mult.is_omega() ? 2 : std::min<std::uint64_t>(b.mult.count(), 2);
      for (std::uint64_t m = 0; m < members && found < 2; ++m) {
        if (b.target == v) {
          ++found;
        } else if (len + 1 < limit && back[b.target]) {
          walk(b.target, len + 1);
        }
      }
    }
  };
  walk(v, 0);
  if (found >= 2) return CspClass::TwoPlus;
  return found == 1 ? CspClass::One : CspClass::Zero;
}

VertexSet closure_oracle(const Graph& g, const VertexSet& seed) {
  VertexMask in = seed.mask(g.vertex_count());
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (in[v]) {
        for (const auto& b : g.bundles()) {
          if (b.source == v && !in[b.target]) {
            in[b.target] = true;
            changed = true;
          }
        }
      } else if (g.kind(v) == VertexKind::Regular) {
        bool all = true;
        for (const auto& b : g.bundles()) {
          if (b.source == v && !in[b.target]) all = false;
        }
        if (all) {
          in[v] = true;
          changed = true;
        }
      }
    }
  }
  return VertexSet::from_mask(in);
}

std::vector<VertexSet> simple_cycles(const Graph& g) {
  // Cycles are rooted at their smallest vertex; distinct vertex sequences
  // may share a vertex set, which is collapsed.
  std::vector<VertexSet> out;
  const std::size_t n = g.vertex_count();
  VertexMask on_path(n, false);
  std::vector<VertexId> path;
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId root, VertexId x) {
    for (VertexId y : g.successors(x)) {
      if (y == root) {
        out.push_back(VertexSet::from_unsorted(path));
      } else if (y > root && !on_path[y]) {
        on_path[y] = true;
        path.push_back(y);
        dfs(root, y);
        path.pop_back();
        on_path[y] = false;
      }
    }
  };
  for (VertexId r = 0; r < n; ++r) {
    path = {r};
    on_path[r] = true;
    dfs(r, r);
    on_path[r] = false;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexSet extreme_cycles_oracle(const Graph& g) {
  return extreme_cycles_oracle(g, simple_cycles(g));
}

VertexSet extreme_cycles_oracle(const Graph& g, const std::vector<VertexSet>& cycles) {
  std::vector<VertexSet> tree;
  for (VertexId v = 0; v < g.vertex_count(); ++v) tree.push_back(reachable(g, v));
  VertexSet out;
  for (const auto& c : cycles) {
    // A simple cycle uses one edge per vertex, so any vertex emitting two
    // edges gives it an exit.
    bool has_exit = std::any_of(c.begin(), c.end(), [&](VertexId v) {
      std::uint64_t total = 0;
      for (std::size_t i : g.out_bundles(v)) {
        const auto& b = g.bundle(i);
        total += b.mult.is_omega() ? 2 : b.mult.count();
      }
      return total >= 2;
    });
    if (!has_exit) continue;
    bool returns = true;
    for (VertexId w : reachable(g, c)) {
      if (!tree[w].intersects(c)) returns = false;
    }
    if (returns) out = set_union(out, c);
  }
  return out;
}

std::vector<VertexSet> cycle_classes_oracle(const Graph& g, const VertexSet& region) {
  return cycle_classes_oracle(g, region, simple_cycles(g));
}

std::vector<VertexSet> cycle_classes_oracle(const Graph& g, const VertexSet& region,
                                            const std::vector<VertexSet>& all) {
  std::vector<VertexSet> cycles;
  for (const auto& c : all) {
    if (c.is_subset_of(region)) cycles.push_back(c);
  }
  std::vector<std::size_t> parent(cycles.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<VertexSet> trees;
  for (const auto& c : cycles) trees.push_back(reachable(g, c));
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      if (trees[i].intersects(cycles[j])) parent[find(i)] = find(j);
    }
  }
  std::vector<VertexSet> classes(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    classes[find(i)] = set_union(classes[find(i)], cycles[i]);
  }
  classes.erase(std::remove_if(classes.begin(), classes.end(),
                               [](const VertexSet& s) { return s.empty(); }),
                classes.end());
  std::sort(classes.begin(), classes.end());
  return classes;
}

VertexSet properly_infinite_oracle(const Graph& g) {
  std::vector<CspClass> csp;
  for (VertexId v = 0; v < g.vertex_count(); ++v) csp.push_back(csp_oracle(g, v));
  VertexSet out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    // The closure is monotone, so the largest admissible witness set decides.
    VertexSet witnesses;
    for (VertexId w : reachable(g, v)) {
      if (csp[w] == CspClass::TwoPlus) witnesses.insert(w);
    }
    if (!witnesses.empty() && closure_oracle(g, witnesses).contains(v)) out.insert(v);
  }
  return out;
}

}  // namespace lpa::checks
