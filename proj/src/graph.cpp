#include "lpa/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lpa/error.hpp"

namespace lpa {

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : Error("line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

ExpressionError::ExpressionError(std::size_t position, const std::string& what)
    : Error("at offset " + std::to_string(position) + ": " + what),
      position_(position) {}

Multiplicity Multiplicity::finite(std::uint64_t count) {
  if (count == 0) {
    throw GraphError("multiplicity must be at least 1");
  }
  return Multiplicity(count);
}

std::string Multiplicity::to_string() const {
  return is_omega() ? std::string("omega") : std::to_string(value_);
}

std::string_view to_string(VertexKind kind) noexcept {
  switch (kind) {
    case VertexKind::Sink:
      return "sink";
    case VertexKind::Regular:
      return "regular";
    case VertexKind::InfiniteEmitter:
      return "infinite_emitter";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

VertexSet::VertexSet(std::initializer_list<VertexId> ids)
    : ids_(ids.begin(), ids.end()) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

VertexSet VertexSet::from_unsorted(std::span<const VertexId> ids) {
  VertexSet s;
  s.ids_.assign(ids.begin(), ids.end());
  std::sort(s.ids_.begin(), s.ids_.end());
  s.ids_.erase(std::unique(s.ids_.begin(), s.ids_.end()), s.ids_.end());
  return s;
}

VertexSet VertexSet::all(std::size_t n) {
  VertexSet s;
  s.ids_.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.ids_[i] = static_cast<VertexId>(i);
  return s;
}

VertexSet VertexSet::from_mask(const VertexMask& mask) {
  VertexSet s;
  s.ids_.reserve(static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)));
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) s.ids_.push_back(static_cast<VertexId>(i));
  }
  return s;
}

bool VertexSet::contains(VertexId v) const noexcept {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

bool VertexSet::insert(VertexId v) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
  if (it != ids_.end() && *it == v) return false;
  ids_.insert(it, v);
  return true;
}

VertexMask VertexSet::mask(std::size_t n) const {
  VertexMask m(n, false);
  for (VertexId v : ids_) {
    if (v < n) m[v] = true;
  }
  return m;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(),
                       ids_.end());
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.ids_.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out.ids_));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.ids_.reserve(a.size() + b.size());
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out.ids_));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.ids_.reserve(a.size() + b.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out.ids_));
  return out;
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

std::string instance_name(const EdgeBundle& b, std::uint64_t member) {
  if (!b.mult.is_omega() && b.mult.count() == 1) return b.id;
  return b.id + "[" + std::to_string(member) + "]";
}

bool is_valid_id(std::string_view id) noexcept {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == '#' || c == ',' || c == ' ' || c == '\t' || c == '\n' ||
           c == '\r' || c == '\v' || c == '\f';
  });
}

Graph Graph::build(std::vector<std::string> vertices,
                   std::vector<BundleSpec> bundles) {
  Graph g;
  std::vector<std::string_view> ids;
  ids.reserve(vertices.size() + bundles.size());
  for (const auto& v : vertices) {
    if (!is_valid_id(v)) throw GraphError("invalid vertex id '" + v + "'");
    ids.push_back(v);
  }
  for (const auto& b : bundles) {
    if (!is_valid_id(b.id)) throw GraphError("invalid edge id '" + b.id + "'");
    ids.push_back(b.id);
  }
  std::sort(ids.begin(), ids.end());
  if (auto dup = std::adjacent_find(ids.begin(), ids.end()); dup != ids.end()) {
    throw GraphError("duplicate id '" + std::string(*dup) + "'");
  }
  // An id "x[k]" would read as member k of a bundle x.
  for (std::string_view id : ids) {
    auto open = id.rfind('[');
    if (open == std::string_view::npos || open + 2 > id.size() - 1 || id.back() != ']') continue;
    auto idx = id.substr(open + 1, id.size() - open - 2);
    if (!std::all_of(idx.begin(), idx.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    if (std::binary_search(ids.begin(), ids.end(), id.substr(0, open))) {
      throw GraphError("id '" + std::string(id) + "' clashes with an edge of bundle '" +
                       std::string(id.substr(0, open)) + "'");
    }
  }
  std::sort(vertices.begin(), vertices.end());
  g.names_ = std::move(vertices);

  std::sort(bundles.begin(), bundles.end(),
            [](const BundleSpec& a, const BundleSpec& b) { return a.id < b.id; });
  g.bundles_.reserve(bundles.size());
  for (auto& b : bundles) {
    auto s = g.find_vertex(b.source);
    auto t = g.find_vertex(b.target);
    if (!s) {
      throw GraphError("edge '" + b.id + "' has unknown source '" + b.source +
                       "'");
    }
    if (!t) {
      throw GraphError("edge '" + b.id + "' has unknown target '" + b.target +
                       "'");
    }
    g.bundles_.push_back(EdgeBundle{std::move(b.id), *s, *t, b.mult});
  }

  const std::size_t n = g.names_.size();
  g.kinds_.assign(n, VertexKind::Sink);
  g.finite_out_.assign(n, 0);
  for (const auto& b : g.bundles_) {
    if (b.mult.is_omega()) {
      g.kinds_[b.source] = VertexKind::InfiniteEmitter;
    } else {
      g.finite_out_[b.source] += b.mult.count();
      if (g.kinds_[b.source] == VertexKind::Sink) {
        g.kinds_[b.source] = VertexKind::Regular;
      }
    }
  }
  // Counting sort by endpoint; bundles are visited in id order, so each row
  // of out_/in_ stays sorted by id.
  auto fill = [&](auto& rows, auto& ends, bool by_source) {
    rows.start.assign(n + 1, 0);
    for (const auto& b : g.bundles_) ++rows.start[(by_source ? b.source : b.target) + 1];
    for (std::size_t v = 0; v < n; ++v) rows.start[v + 1] += rows.start[v];
    std::vector<std::uint32_t> pos(rows.start.begin(), rows.start.end() - 1);
    rows.items.resize(g.bundles_.size());
    ends.start = rows.start;
    ends.items.resize(g.bundles_.size());
    for (std::size_t i = 0; i < g.bundles_.size(); ++i) {
      const auto& b = g.bundles_[i];
      std::uint32_t p = pos[by_source ? b.source : b.target]++;
      rows.items[p] = i;
      ends.items[p] = by_source ? b.target : b.source;
    }
    // Deduplicate each endpoint row in place and compact.
    std::uint32_t w = 0;
    for (std::size_t v = 0; v < n; ++v) {
      auto first = ends.items.begin() + ends.start[v];
      auto last = ends.items.begin() + ends.start[v + 1];
      std::sort(first, last);
      last = std::unique(first, last);
      ends.start[v] = w;
      for (auto it = first; it != last; ++it) ends.items[w++] = *it;
    }
    ends.start[n] = w;
    ends.items.resize(w);
  };
  fill(g.out_, g.succ_, true);
  fill(g.in_, g.pred_, false);
  // FNV-1a over names, endpoints and multiplicities; 0xff separates fields.
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::string_view bytes) {
    for (unsigned char c : bytes) h = (h ^ c) * 0x100000001b3ull;
    h = (h ^ 0xffu) * 0x100000001b3ull;
  };
  auto mix_word = [&](std::uint64_t w) {
    mix(std::string_view(reinterpret_cast<const char*>(&w), sizeof w));
  };
  mix_word(g.names_.size());
  for (const auto& name : g.names_) mix(name);
  for (const auto& b : g.bundles_) {
    mix(b.id);
    mix_word(b.source);
    mix_word(b.target);
    mix_word(b.mult.is_omega() ? 0 : b.mult.count());
  }
  g.fingerprint_ = h;
  return g;
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

VertexId Graph::vertex(std::string_view name) const {
  auto v = find_vertex(name);
  if (!v) throw PreconditionError("unknown vertex '" + std::string(name) + "'");
  return *v;
}

VertexSet Graph::vertex_set(std::span<const std::string> names) const {
  std::vector<VertexId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(vertex(n));
  return VertexSet::from_unsorted(std::move(ids));
}

std::vector<std::string> Graph::names(const VertexSet& s) const {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (VertexId v : s) out.push_back(name(v));
  return out;
}

void Graph::check_members(const VertexSet& s) const {
  if (!s.empty() && s.ids().back() >= names_.size()) {
    throw PreconditionError("unknown vertex id " +
                            std::to_string(s.ids().back()));
  }
}

std::optional<std::size_t> Graph::find_bundle(std::string_view id) const {
  auto it = std::lower_bound(
      bundles_.begin(), bundles_.end(), id,
      [](const EdgeBundle& b, std::string_view key) { return b.id < key; });
  if (it == bundles_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - bundles_.begin());
}

bool Graph::is_bifurcation(VertexId v) const {
  return is_infinite_emitter(v) || finite_out_.at(v) >= 2;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  struct PendingBundle {
    Graph::BundleSpec spec;
    std::size_t line;
    Token src, dst;
  };
  std::vector<std::string> vertices;
  std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>>
      defined;  // id -> (line, column)
  std::vector<PendingBundle> pending;

  auto define = [&](const Token& t, std::size_t line) {
    if (!is_valid_id(t.text)) {
      throw ParseError(line, t.column,
                       "invalid id '" + std::string(t.text) + "'");
    }
    auto [it, fresh] = defined.emplace(std::string(t.text),
                                       std::make_pair(line, t.column));
    if (!fresh) {
      throw ParseError(line, t.column,
                       "duplicate id '" + std::string(t.text) +
                           "' (first defined on line " +
                           std::to_string(it->second.first) + ")");
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = split_tokens(line);
    if (tokens.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const Token& kw = tokens[0];
    if (kw.text == "vertices") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        define(tokens[i], line_no);
        vertices.emplace_back(tokens[i].text);
      }
    } else if (kw.text == "edge" || kw.text == "bundle") {
      const bool is_bundle = kw.text == "bundle";
      if (tokens.size() < 4) {
        std::size_t col = tokens.back().column + tokens.back().text.size();
        throw ParseError(line_no, col,
                         std::string("'") + std::string(kw.text) +
                             "' needs an id, a source and a target");
      }
      if (tokens.size() > 5) {
        throw ParseError(line_no, tokens[5].column, "unexpected token '" +
                                                        std::string(tokens[5].text) +
                                                        "'");
      }
      define(tokens[1], line_no);
      Multiplicity mult = Multiplicity::finite(1);
      if (is_bundle) {
        if (tokens.size() != 5 || tokens[4].text != "omega") {
          std::size_t col = tokens.size() == 5
                                ? tokens[4].column
                                : tokens[3].column + tokens[3].text.size();
          throw ParseError(line_no, col, "'bundle' expects multiplicity 'omega'");
        }
        mult = Multiplicity::omega();
      } else if (tokens.size() == 5) {
        const Token& m = tokens[4];
        std::uint64_t k = 0;
        bool ok = m.text.size() >= 2 && m.text[0] == 'x';
        if (ok) {
          auto r = std::from_chars(m.text.data() + 1,
                                   m.text.data() + m.text.size(), k);
          ok = r.ec == std::errc() && r.ptr == m.text.data() + m.text.size();
        }
        if (!ok) {
          throw ParseError(line_no, m.column,
                           "malformed multiplicity '" + std::string(m.text) +
                               "' (expected x<k>)");
        }
        if (k == 0) {
          throw ParseError(line_no, m.column, "multiplicity must be at least 1");
        }
        mult = Multiplicity::finite(k);
      }
      pending.push_back({Graph::BundleSpec{std::string(tokens[1].text),
                                           std::string(tokens[2].text),
                                           std::string(tokens[3].text), mult},
                         line_no, tokens[2], tokens[3]});
    } else {
      throw ParseError(line_no, kw.column,
                       "unknown directive '" + std::string(kw.text) + "'");
    }
    if (eol == text.size()) break;
  }

  std::set<std::string_view> vertex_names(vertices.begin(), vertices.end());
  std::vector<Graph::BundleSpec> specs;
  specs.reserve(pending.size());
  for (auto& p : pending) {
    for (const Token* end : {&p.src, &p.dst}) {
      if (!vertex_names.count(end->text)) {
        throw ParseError(p.line, end->column,
                         "dangling endpoint '" + std::string(end->text) + "'");
      }
    }
    specs.push_back(std::move(p.spec));
  }
  return Graph::build(std::move(vertices), std::move(specs));
}

std::string serialize_graph(const Graph& g) {
  std::string out = "vertices";
  for (const auto& n : g.vertex_names()) {
    out += ' ';
    out += n;
  }
  out += '\n';
  for (const auto& b : g.bundles()) {
    if (b.mult.is_omega()) {
      out += "bundle " + b.id + ' ' + g.name(b.source) + ' ' +
             g.name(b.target) + " omega\n";
    } else {
      out += "edge " + b.id + ' ' + g.name(b.source) + ' ' + g.name(b.target);
      if (b.mult.count() != 1) out += " x" + std::to_string(b.mult.count());
      out += '\n';
    }
  }
  return out;
}

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_dot(const Graph& g) {
  std::ostringstream os;
  os << "digraph E {\n";
  for (const auto& n : g.vertex_names()) os << "  " << dot_quote(n) << ";\n";
  for (const auto& b : g.bundles()) {
    os << "  " << dot_quote(g.name(b.source)) << " -> "
       << dot_quote(g.name(b.target)) << " [id=" << dot_quote(b.id)
       << ", label="
       << dot_quote(b.mult.is_omega() ? std::string("×ω")
                                      : "×" + std::to_string(b.mult.count()))
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Reachability and condensation
// ---------------------------------------------------------------------------

VertexSet reachable(const Graph& g, const VertexSet& from) {
  g.check_members(from);
  VertexMask seen = from.mask(g.vertex_count());
  boost::container::small_vector<VertexId, 16> stack(from.begin(), from.end());
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return VertexSet::from_mask(seen);
}

VertexSet reachable(const Graph& g, VertexId from) {
  return reachable(g, VertexSet{from});
}

VertexSet coreachable(const Graph& g, const VertexSet& to) {
  g.check_members(to);
  VertexMask seen = to.mask(g.vertex_count());
  boost::container::small_vector<VertexId, 16> stack(to.begin(), to.end());
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.predecessors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return VertexSet::from_mask(seen);
}

namespace {

// Tarjan's algorithm; the recursion depth is bounded by the vertex count.
class Tarjan {
 public:
  explicit Tarjan(const Graph& g)
      : g_(g),
        index_(g.vertex_count(), -1),
        low_(g.vertex_count(), 0),
        on_stack_(g.vertex_count(), false) {}

  std::vector<VertexSet> run() {
    for (VertexId v = 0; v < g_.vertex_count(); ++v) {
      if (index_[v] < 0) visit(v);
    }
    return std::move(sccs_);
  }

 private:
  void visit(VertexId v) {
    index_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    on_stack_[v] = true;
    for (VertexId w : g_.successors(v)) {
      if (index_[w] < 0) {
        visit(w);
        low_[v] = std::min(low_[v], low_[w]);
      } else if (on_stack_[w]) {
        low_[v] = std::min(low_[v], index_[w]);
      }
    }
    if (low_[v] == index_[v]) {
      boost::container::small_vector<VertexId, 16> scc;
      VertexId w;
      do {
        w = stack_.back();
        stack_.pop_back();
        on_stack_[w] = false;
        scc.push_back(w);
      } while (w != v);
      sccs_.push_back(VertexSet::from_unsorted({scc.data(), scc.size()}));
    }
  }

  const Graph& g_;
  boost::container::small_vector<int, 16> index_;
  boost::container::small_vector<int, 16> low_;
  VertexMask on_stack_;
  boost::container::small_vector<VertexId, 16> stack_;
  std::vector<VertexSet> sccs_;
  int counter_ = 0;
};

}  // namespace

Condensation condense(const Graph& g) {
  Condensation c;
  c.components = Tarjan(g).run();
  std::sort(c.components.begin(), c.components.end(),
            [](const VertexSet& a, const VertexSet& b) {
              return a.ids().front() < b.ids().front();
            });
  c.scc_of.assign(g.vertex_count(), 0);
  for (std::uint32_t i = 0; i < c.components.size(); ++i) {
    for (VertexId v : c.components[i]) c.scc_of[v] = i;
  }
  c.successors.assign(c.size(), {});
  c.trivial.assign(c.size(), false);
  c.terminal.assign(c.size(), false);
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    bool self_loop = false;
    for (VertexId v : c.components[i]) {
      for (VertexId w : g.successors(v)) {
        if (c.scc_of[w] == i) {
          self_loop = true;
        } else {
          c.successors[i].push_back(c.scc_of[w]);
        }
      }
    }
    auto& s = c.successors[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    c.trivial[i] = c.components[i].size() == 1 && !self_loop;
    c.terminal[i] = s.empty();
  }
  return c;
}

}  // namespace lpa
