#include <doctest.h>

#include <random>
#include <set>

#include "lpa/checks.hpp"
#include "lpa/error.hpp"
#include "lpa/hedgehog.hpp"
#include "support.hpp"

using namespace lpa;
using namespace lpa::test;

namespace {

struct Step {
  std::size_t bundle;
  std::uint64_t member;
};

// Path-vertex names of every admissible path of length <= max_len built from
// finite bundles, by forward enumeration of all edge sequences.
std::set<std::string> admissible_paths(const Graph& g, const VertexSet& h,
                                       const VertexSet& s, std::size_t max_len,
                                       bool& saw_omega) {
  std::set<std::string> out;
  saw_omega = false;
  std::vector<Step> path;
  auto name = [&] {
    std::string n = "p:";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) n += ".";
      n += instance_name(g.bundle(path[i].bundle), path[i].member);
    }
    return n;
  };
  auto admissible = [&](bool& omega) {
    omega = false;
    const std::size_t n = path.size();
    for (const auto& st : path) omega = omega || g.bundle(st.bundle).mult.is_omega();
    const auto& last = g.bundle(path.back().bundle);
    bool f1 = h.contains(last.target) && !h.contains(last.source) && !s.contains(last.source);
    bool f2 = s.contains(last.target);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      VertexId r = g.bundle(path[i].bundle).target;
      if (h.contains(r)) f1 = false;
      if (h.contains(r) || s.contains(r)) f2 = false;
    }
    return f1 || f2;
  };
  std::function<void(VertexId)> extend = [&](VertexId at) {
    if (path.size() == max_len) return;
    for (std::size_t i : g.out_bundles(at)) {
      const auto& b = g.bundle(i);
      // One representative member of an omega bundle; it is only used to
      // detect infinite families.
      std::uint64_t members = b.mult.is_omega() ? 1 : b.mult.count();
      for (std::uint64_t m = 1; m <= members; ++m) {
        path.push_back({i, m});
        bool omega = false;
        if (admissible(omega)) {
          if (omega) saw_omega = true;
          else out.insert(name());
        }
        extend(b.target);
        path.pop_back();
      }
    }
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) extend(v);
  return out;
}

std::set<std::string> table_keys(const HedgehogGraph& hh) {
  std::set<std::string> out;
  for (const auto& [k, v] : hh.path_vertex_table) out.insert(k);
  return out;
}

void check_shape(const HedgehogGraph& hh) {
  const Graph& e = hh.base;
  for (const auto& [name, path] : hh.path_vertex_table) {
    VertexId p = e.vertex(name);
    CHECK(e.out_bundles(p).size() == 1);
    CHECK(e.finite_out_degree(p) == 1);
    CHECK(e.in_bundles(p).empty());
    CHECK(e.bundle(e.out_bundles(p)[0]).id == "bar:" + name.substr(2));
    CHECK_FALSE(path.empty());
  }
}

}  // namespace

TEST_CASE("hedgehog of line2 over v2") {
  Graph g = fixture("line2");
  CHECK(hedgehog_is_finite(g, vs(g, {"v2"}), {}));
  HedgehogGraph hh = build_hedgehog(g, vs(g, {"v2"}), {});
  CHECK(hh.finite);
  CHECK_FALSE(hh.truncated_at);
  CHECK(serialize_graph(hh.base) == "vertices p:e1 v2\nedge bar:e1 p:e1 v2\n");
  REQUIRE(hh.path_vertex_table.count("p:e1"));
  CHECK(hh.path_vertex_table.at("p:e1") == Names{"e1"});
  check_shape(hh);
}

TEST_CASE("hedgehog with a breaking vertex") {
  Graph g = fixture("omega-h");
  HedgehogGraph hh = build_hedgehog(g, vs(g, {"h"}), vs(g, {"u"}));
  CHECK(hh.finite);
  CHECK(serialize_graph(hh.base) ==
        "vertices h u\nedge h1 h h\nedge h2 h h\nbundle om u h omega\n");
  CHECK(hh.path_vertex_table.empty());
  CHECK(hh.s == vs(g, {"u"}));
}

TEST_CASE("hedgehog over every vertex is the graph") {
  for (const char* name : {"chain3", "chain3sink", "six", "fork", "twoloop-oneloop",
                           "line3", "omega-h"}) {
    Graph g = fixture(name);
    VertexSet all = VertexSet::all(g.vertex_count());
    CHECK(hedgehog_is_finite(g, all, {}));
    HedgehogGraph hh = build_hedgehog(g, all, {});
    CHECK(hh.base == g);
    CHECK(hh.finite);
  }
}

TEST_CASE("loops above H give an infinite hedgehog") {
  Graph g = fixture("chain3sink");
  VertexSet h = vs(g, {"v2", "v3"});
  CHECK_FALSE(hedgehog_is_finite(g, h, {}));
  HedgehogGraph hh = build_hedgehog(g, h, {}, 2);
  CHECK_FALSE(hh.finite);
  REQUIRE(hh.truncated_at);
  CHECK(*hh.truncated_at == 2);
  CHECK(table_keys(hh) == std::set<std::string>{"p:a1.f1", "p:a2.f1", "p:f1"});
  check_shape(hh);
  HedgehogGraph deeper = build_hedgehog(g, h, {}, 3);
  CHECK(deeper.path_vertex_table.size() == 7);
  CHECK(build_hedgehog(g, h, {}).truncated_at == kDefaultHedgehogDepth);
}

TEST_CASE("omega bundles into H are reported as families") {
  Graph g = fixture("omega-h");
  HedgehogGraph hh = build_hedgehog(g, vs(g, {"h"}), {});
  CHECK_FALSE(hh.finite);
  CHECK(hh.omega_families == Names{"om"});
  // The finite edge u -> x does not end in H; no path vertex is built.
  CHECK(hh.path_vertex_table.empty());
}

TEST_CASE("hedgehog preconditions") {
  Graph g = fixture("omega-h");
  CHECK_THROWS_AS(build_hedgehog(g, vs(g, {"u"}), {}), PreconditionError);
  CHECK_THROWS_AS(build_hedgehog(g, vs(g, {"h"}), vs(g, {"x"})), PreconditionError);
  CHECK_THROWS_AS(build_hedgehog(g, vs(g, {"h"}), {}, 0), PreconditionError);
  CHECK_THROWS_AS(hedgehog_is_finite(g, vs(g, {"x"}), vs(g, {"h"})), PreconditionError);
  try {
    build_hedgehog(g, vs(g, {"h"}), vs(g, {"x"}));
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("B_H") != std::string::npos);
  }
}

TEST_CASE("hedgehog paths match forward enumeration") {
  std::mt19937_64 rng(41);
  std::bernoulli_distribution coin(0.3);
  int finite = 0, infinite = 0, with_s = 0;
  for (int i = 0; i < 600; ++i) {
    checks::RandomGraphOptions opt;
    opt.max_vertices = 6;
    opt.max_mult = 2;
    opt.edge_probability = 0.25;
    opt.omega_probability = 0.25;
    Graph g = checks::random_graph(rng, opt);
    VertexSet seed;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (coin(rng)) seed.insert(v);
    }
    VertexSet h = reachable(g, seed);
    VertexSet s;
    for (VertexId v : breaking_vertices(g, h).members) {
      if (!coin(rng)) s.insert(v);
    }
    with_s += !s.empty();
    const std::size_t depth = 3;
    HedgehogGraph hh = build_hedgehog(g, h, s, depth);
    CHECK(hh.finite == hedgehog_is_finite(g, h, s));
    check_shape(hh);
    bool saw_omega = false;
    if (hh.finite) {
      ++finite;
      // With no long paths, length n + 1 already exceeds what can exist.
      auto all = admissible_paths(g, h, s, g.vertex_count() + 1, saw_omega);
      CHECK_FALSE(saw_omega);
      CHECK(table_keys(hh) == all);
      for (const auto& p : all) CHECK(std::count(p.begin(), p.end(), '.') < int(g.vertex_count()));
      CHECK(build_hedgehog(g, h, s, depth + 4).base == hh.base);
    } else {
      ++infinite;
      auto upto = admissible_paths(g, h, s, depth, saw_omega);
      CHECK(table_keys(hh) == upto);
      CHECK(hh.truncated_at == depth);
      // Either an omega edge occurs on some path, or paths keep growing.
      auto longer = admissible_paths(g, h, s, g.vertex_count() + 2, saw_omega);
      bool grows = false;
      for (const auto& p : longer) {
        grows = grows || std::count(p.begin(), p.end(), '.') >= int(g.vertex_count());
      }
      CHECK((saw_omega || grows));
    }
    // Every vertex of H and S survives with the bundles the construction keeps.
    for (VertexId v : set_union(h, s)) CHECK(hh.base.find_vertex(g.name(v)));
    for (const auto& b : g.bundles()) {
      bool kept = h.contains(b.source) || (s.contains(b.source) && h.contains(b.target));
      CHECK(hh.base.find_bundle(b.id).has_value() == kept);
    }
  }
  CHECK(finite > 50);
  CHECK(infinite > 50);
  CHECK(with_s > 10);
}
