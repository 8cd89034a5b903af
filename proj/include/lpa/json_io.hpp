#pragma once

#include <string>

#include <json.hpp>

#include "lpa/algebra.hpp"
#include "lpa/classify.hpp"
#include "lpa/closure.hpp"
#include "lpa/graph.hpp"
#include "lpa/hedgehog.hpp"
#include "lpa/ideals.hpp"

namespace lpa::json {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

/// "sha256:<hex>" of the canonical serialization.
std::string graph_digest(const Graph& g);

/// {schema_version, command, graph_digest, payload}
Json envelope(const std::string& command, const Graph& g, Json payload);

/// Sorted array of vertex names.
Json names(const Graph& g, const VertexSet& s);

Json graph(const Graph& g);
Json classification(const Graph& g, const Classification& c);
Json closure(const Graph& g, const VertexSet& seed, const ClosureTrace& t);
Json hedgehog(const Graph& g, const HedgehogGraph& h);
Json report(const Graph& g, const LargestIdealsReport& r);
Json element(const Algebra& alg, const AlgebraElement& a);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace lpa::json
