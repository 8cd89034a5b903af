#include "lpa/json_io.hpp"

#include <array>
#include <cstdio>

#include <openssl/evp.h>

#include "lpa/error.hpp"

namespace lpa::json {

std::string graph_digest(const Graph& g) {
  const std::string text = serialize_graph(g);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::string out = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

Json envelope(const std::string& command, const Graph& g, Json payload) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["graph_digest"] = graph_digest(g);
  j["payload"] = std::move(payload);
  return j;
}

Json names(const Graph& g, const VertexSet& s) {
  Json arr = Json::array();
  for (VertexId v : s) arr.push_back(g.name(v));
  return arr;
}

Json graph(const Graph& g) {
  Json j;
  j["vertices"] = g.vertex_names();
  Json bundles = Json::array();
  for (const auto& b : g.bundles()) {
    Json e;
    e["id"] = b.id;
    e["source"] = g.name(b.source);
    e["target"] = g.name(b.target);
    if (b.mult.is_omega()) {
      e["multiplicity"] = "omega";
    } else {
      e["multiplicity"] = b.mult.count();
    }
    bundles.push_back(std::move(e));
  }
  j["bundles"] = std::move(bundles);
  Json kinds = Json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    kinds[g.name(v)] = std::string(to_string(g.kind(v)));
  }
  j["kinds"] = std::move(kinds);
  return j;
}

Json classification(const Graph& g, const Classification& c) {
  Json j;
  j["p_l"] = names(g, c.p_l);
  j["p_c"] = names(g, c.p_c);
  j["p_ec"] = names(g, c.p_ec);
  j["p_binf"] = names(g, c.p_binf);
  j["p_pi"] = names(g, c.p_pi);
  j["p_ppi"] = names(g, c.p_ppi);
  j["p_ec_prime"] = names(g, c.p_ec_prime);
  j["p_pec"] = names(g, c.p_pec);
  j["p_prime"] = names(g, c.p_prime);
  j["p_K"] = names(g, c.p_K);
  j["p_ex"] = names(g, c.p_ex);
  j["exchange_breaking"] = names(g, c.exchange_breaking);
  j["exchange_breaking_zero_outside"] = names(g, c.exchange_breaking_zero_outside);
  j["condition_K"] = c.condition_K;
  j["condition_L"] = c.condition_L;
  Json csp = Json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    csp[g.name(v)] = std::string(to_string(csp_class(g, v)));
  }
  j["csp"] = std::move(csp);
  return j;
}

Json closure(const Graph& g, const VertexSet& seed, const ClosureTrace& t) {
  Json j;
  j["seed"] = names(g, seed);
  j["closure"] = names(g, t.closure.members());
  j["rounds"] = t.rounds;
  j["hereditary"] = t.closure.is_hereditary();
  j["saturated"] = t.closure.is_saturated();
  return j;
}

Json hedgehog(const Graph& g, const HedgehogGraph& h) {
  Json j;
  j["H"] = names(g, h.h.members());
  j["S"] = names(g, h.s);
  j["finite"] = h.finite;
  if (h.truncated_at) {
    j["truncated_at"] = *h.truncated_at;
  } else {
    j["truncated_at"] = nullptr;
  }
  j["omega_families"] = h.omega_families;
  j["graph"] = graph(h.base);
  Json table = Json::object();
  for (const auto& [vertex, path] : h.path_vertex_table) table[vertex] = path;
  j["path_vertex_table"] = std::move(table);
  return j;
}

Json report(const Graph& g, const LargestIdealsReport& r) {
  Json j;
  j["classification"] = classification(g, r.classification);
  j["semisimple_gens"] = names(g, r.semisimple_gens);
  j["loc_noetherian_gens"] = names(g, r.loc_noetherian_gens);
  j["loc_noetherian_no_min_idem_gens"] = names(g, r.loc_noetherian_no_min_idem_gens);
  j["purely_infinite_gens"] = names(g, r.purely_infinite_gens);
  j["exchange_gens"] = names(g, r.exchange_gens);

  Json dense;
  dense["gens"] = names(g, r.dense_gens);
  dense["dense"] = r.density.dense;
  Json witness = Json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Json path = Json::array();
    for (VertexId u : r.density.witness[v]) path.push_back(g.name(u));
    witness[g.name(v)] = std::move(path);
  }
  dense["witness"] = std::move(witness);
  dense["failing"] = names(g, r.density.failing);
  j["dense"] = std::move(dense);

  Json classes = Json::array();
  Condensation cond = condense(g);
  for (const auto& c : r.pi_decomposition) {
    Json k;
    k["kind"] = std::string(to_string(c.kind));
    Json sccs = Json::array();
    for (auto id : c.member_sccs) sccs.push_back(names(g, cond.components[id]));
    k["member_sccs"] = std::move(sccs);
    k["class_vertices"] = names(g, c.class_vertices);
    k["tree"] = names(g, c.tree);
    k["label"] = std::string(to_string(c.label));
    classes.push_back(std::move(k));
  }
  j["pi_decomposition"] = std::move(classes);

  Json notes = Json::array();
  notes.push_back(
      "p_binf lists the vertices whose tree contains an infinite emitter; "
      "with finitely many vertices no tree has infinitely many bifurcations");
  if (!r.classification.exchange_breaking_zero_outside.empty()) {
    notes.push_back(
        "exchange_breaking_zero_outside: breaking vertices of P_(K) that emit "
        "no edge outside P_(K); they are included in p_ex");
  }
  j["notes"] = std::move(notes);
  return j;
}

Json element(const Algebra& alg, const AlgebraElement& a) {
  Json j;
  j["text"] = alg.format(a);
  Json terms = Json::array();
  for (const auto& [m, c] : a.terms()) {
    Json t;
    t["coefficient"] = alg.format(c);
    Json real = Json::array();
    for (const auto& e : m.real) real.push_back(alg.instance_name(e));
    Json ghost = Json::array();
    for (const auto& e : m.ghost) ghost.push_back(alg.instance_name(e));
    t["real"] = std::move(real);
    t["ghost"] = std::move(ghost);
    t["anchor"] = alg.graph().name(m.anchor);
    t["degree"] = m.degree();
    t["monomial"] = alg.format(m);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lpa::json
