#include "lpa/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lpa/algebra.hpp"
#include "lpa/checks.hpp"
#include "lpa/classify.hpp"
#include "lpa/closure.hpp"
#include "lpa/error.hpp"
#include "lpa/graph.hpp"
#include "lpa/hedgehog.hpp"
#include "lpa/ideals.hpp"
#include "lpa/json_io.hpp"

namespace lpa::cli {

namespace {

using json::Json;

class UsageError : public Error {
 public:
  using Error::Error;
};

Graph load(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_graph(text);
}

VertexSet vertex_list(const Graph& g, const std::string& csv) {
  std::vector<std::string> names;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return g.vertex_set(names);
}

std::string brace(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  for (VertexId v : s) {
    if (out.size() > 1) out += ", ";
    out += g.name(v);
  }
  return out + "}";
}

std::string pretty_report(const Graph& g, const LargestIdealsReport& r) {
  const Classification& c = r.classification;
  std::ostringstream os;
  os << "largest semisimple ideal:            I(" << brace(g, r.semisimple_gens) << ")\n"
     << "largest locally noetherian ideal:    I(" << brace(g, r.loc_noetherian_gens) << ")\n"
     << "  without minimal idempotents:       I(" << brace(g, r.loc_noetherian_no_min_idem_gens) << ")\n"
     << "largest purely infinite ideal:       I(" << brace(g, r.purely_infinite_gens) << ")\n"
     << "largest exchange ideal:              I(" << brace(g, r.exchange_gens) << ")\n"
     << "dense ideal:                         I(" << brace(g, r.dense_gens) << ")"
     << (r.density.dense ? " dense\n" : " NOT dense\n");
  os << "\nP_l " << brace(g, c.p_l) << "\nP_c " << brace(g, c.p_c) << "\nP_ec "
     << brace(g, c.p_ec) << "\nP_binf " << brace(g, c.p_binf) << "\nP_pi "
     << brace(g, c.p_pi) << "\nP_ppi " << brace(g, c.p_ppi) << "\nP_ec' "
     << brace(g, c.p_ec_prime) << "\nP_pec " << brace(g, c.p_pec) << "\nP' "
     << brace(g, c.p_prime) << "\nP_(K) " << brace(g, c.p_K) << "\nP_ex "
     << brace(g, c.p_ex) << "\ncondition (K): " << (c.condition_K ? "yes" : "no")
     << "\ncondition (L): " << (c.condition_L ? "yes" : "no") << "\n";
  if (!r.pi_decomposition.empty()) {
    os << "\npurely infinite decomposition:\n";
    for (const auto& cls : r.pi_decomposition) {
      os << "  " << to_string(cls.kind) << " " << brace(g, cls.class_vertices)
         << " tree " << brace(g, cls.tree) << " " << to_string(cls.label) << "\n";
    }
  }
  return os.str();
}

Json suite_json(const checks::SuiteResult& s) {
  Json j;
  j["name"] = s.name;
  j["checked"] = s.checked;
  j["failures"] = s.failures;
  j["first_failure"] = s.first_failure;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyses of Leavitt path algebras of finite graphs", "lpa"};
  app.require_subcommand(1);

  std::string file;
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "graph file ('-' for stdin)")->required();
  };

  auto* validate = app.add_subcommand("validate", "parse a graph and print its canonical form");
  add_file(validate);

  auto* classify_cmd = app.add_subcommand("classify", "vertex classification");
  add_file(classify_cmd);

  std::string seed;
  auto* closure_cmd = app.add_subcommand("closure", "hereditary saturated closure");
  add_file(closure_cmd);
  closure_cmd->add_option("--seed", seed, "comma-separated vertices")->required();

  std::string h_arg;
  std::string s_arg;
  std::size_t depth = kDefaultHedgehogDepth;
  bool dot_out = false;
  auto* hedgehog_cmd = app.add_subcommand("hedgehog", "generalized hedgehog graph of (H, S)");
  add_file(hedgehog_cmd);
  hedgehog_cmd->add_option("--H", h_arg, "comma-separated hereditary set")->required();
  hedgehog_cmd->add_option("--S", s_arg, "comma-separated breaking vertices of H");
  hedgehog_cmd->add_option("--depth", depth, "path length limit for infinite families")
      ->check(CLI::PositiveNumber);
  hedgehog_cmd->add_flag("--dot", dot_out, "print Graphviz instead of JSON");

  bool pretty = false;
  bool as_json = false;
  auto* report_cmd = app.add_subcommand("report", "largest-ideal report");
  add_file(report_cmd);
  auto* json_flag = report_cmd->add_flag("--json", as_json, "JSON output (default)");
  report_cmd->add_flag("--pretty", pretty, "human-readable output")->excludes(json_flag);

  std::string expr;
  bool graded = false;
  bool eval_json = false;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression in L_Q(E)");
  add_file(eval_cmd);
  eval_cmd->add_option("--expr", expr, "expression")->required();
  eval_cmd->add_flag("--graded", graded, "also print homogeneous components");
  eval_cmd->add_flag("--json", eval_json, "JSON output");

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz export");
  add_file(dot_cmd);

  std::size_t cases = 200;
  std::size_t max_vertices = 8;
  std::uint64_t rng_seed = 1;
  auto* selftest_cmd = app.add_subcommand("selftest", "randomized property and oracle suites");
  selftest_cmd->add_option("--cases", cases, "random graphs per suite")->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--max-vertices", max_vertices, "largest random graph")
      ->check(CLI::Range(1, 12));
  selftest_cmd->add_option("--seed", rng_seed, "base seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* shown = &app;
    for (const CLI::App* sub : app.get_subcommands()) shown = sub;
    err << shown->help();
    return kUsage;
  }

  std::optional<Graph> graph;
  try {
    if (*selftest_cmd) {
      std::size_t small = std::min<std::size_t>(max_vertices, 7);
      std::vector<checks::SuiteResult> suites;
      suites.push_back(checks::property_suite(cases, max_vertices, rng_seed));
      suites.push_back(checks::oracle_suite(cases, small, rng_seed));
      suites.push_back(checks::maximality_suite(cases, max_vertices, rng_seed));
      suites.push_back(checks::breaking_idempotent_suite(
          cases, std::min<std::size_t>(max_vertices, 6), rng_seed));
      suites.push_back(checks::associativity_suite(
          cases * 10, std::min<std::size_t>(max_vertices, 5), rng_seed));
      Json j;
      j["schema_version"] = json::kSchemaVersion;
      j["command"] = "selftest";
      Json payload;
      payload["cases"] = cases;
      payload["max_vertices"] = max_vertices;
      payload["seed"] = rng_seed;
      Json list = Json::array();
      bool ok = true;
      for (const auto& s : suites) {
        list.push_back(suite_json(s));
        ok = ok && s.failures == 0;
      }
      payload["suites"] = std::move(list);
      payload["ok"] = ok;
      j["payload"] = std::move(payload);
      out << json::dump(j);
      if (!ok) {
        for (const auto& s : suites) {
          if (s.counterexample) {
            err << "counterexample for " << s.name << ": " << s.first_failure << "\n"
                << serialize_graph(*s.counterexample);
          }
        }
        return kInvariant;
      }
      return kOk;
    }

    graph = load(file);
    const Graph& g = *graph;

    if (*validate) {
      Json p = json::graph(g);
      p["canonical"] = serialize_graph(g);
      out << json::dump(json::envelope("validate", g, std::move(p)));
    } else if (*classify_cmd) {
      out << json::dump(json::envelope("classify", g, json::classification(g, classify(g))));
    } else if (*closure_cmd) {
      VertexSet x = vertex_list(g, seed);
      out << json::dump(json::envelope("closure", g, json::closure(g, x, hs_closure_traced(g, x))));
    } else if (*hedgehog_cmd) {
      HedgehogGraph h = build_hedgehog(g, vertex_list(g, h_arg), vertex_list(g, s_arg), depth);
      if (dot_out) {
        out << to_dot(h.base);
      } else {
        out << json::dump(json::envelope("hedgehog", g, json::hedgehog(g, h)));
      }
    } else if (*report_cmd) {
      LargestIdealsReport r = largest_ideals_report(g);
      check_report_invariants(g, r);
      if (pretty) {
        out << pretty_report(g, r);
      } else {
        out << json::dump(json::envelope("report", g, json::report(g, r)));
      }
    } else if (*eval_cmd) {
      Algebra alg(g);
      AlgebraElement x = alg.parse(expr);
      auto parts = alg.graded_components(x);
      if (eval_json) {
        Json p;
        p["expr"] = expr;
        p["result"] = json::element(alg, x);
        if (graded) {
          Json comps = Json::object();
          for (const auto& [d, c] : parts) comps[std::to_string(d)] = json::element(alg, c);
          p["graded"] = std::move(comps);
        }
        out << json::dump(json::envelope("eval", g, std::move(p)));
      } else {
        out << alg.format(x) << "\n";
        if (graded) {
          for (const auto& [d, c] : parts) out << "degree " << d << ": " << alg.format(c) << "\n";
        }
      }
    } else if (*dot_cmd) {
      out << to_dot(g);
    }
    return kOk;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    if (graph) err << "reproducer:\n" << serialize_graph(*graph);
    return kInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace lpa::cli
