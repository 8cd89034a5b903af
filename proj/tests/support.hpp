#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "lpa/graph.hpp"

namespace lpa::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(LPA_FIXTURE_DIR) + "/" + name + ".lpa";
}

inline Graph fixture(const std::string& name) {
  return parse_graph(read_file(fixture_path(name)));
}

/// Set of vertices given by name.
inline VertexSet vs(const Graph& g, std::initializer_list<const char*> names) {
  std::vector<std::string> v(names.begin(), names.end());
  return g.vertex_set(v);
}

inline std::vector<std::string> nm(const Graph& g, const VertexSet& s) {
  return g.names(s);
}

using Names = std::vector<std::string>;

/// Reachability by repeated passes over the bundle list; shares no code with
/// the library traversal.
inline std::vector<bool> naive_reach(const Graph& g, VertexId from) {
  std::vector<bool> in(g.vertex_count(), false);
  in[from] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& b : g.bundles()) {
      if (in[b.source] && !in[b.target]) in[b.target] = changed = true;
    }
  }
  return in;
}

}  // namespace lpa::test
