#include "hyperfactor/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hyperfactor {

using nlohmann::json;

namespace {

constexpr Count kMaxVertices = Count{1} << 24;

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

// Non-negative integer field, rejecting floats, negatives and strings.
Count need_count(const json& doc, const char* field) {
  if (!doc.is_object() || !doc.contains(field)) bad(std::string("missing field \"") + field + "\"");
  const json& x = doc.at(field);
  if (!x.is_number_unsigned()) bad(std::string("field \"") + field + "\" must be a non-negative integer");
  return x.get<Count>();
}

Count as_count(const json& x, const std::string& where) {
  if (!x.is_number_unsigned()) bad(where + " must be a non-negative integer");
  return x.get<Count>();
}

std::vector<Count> count_array(const json& x, const std::string& where) {
  if (!x.is_array()) bad(where + " must be an array");
  std::vector<Count> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(as_count(x[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::uint64_t parse_uint(std::string_view s, const std::string& context) {
  std::uint64_t value = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || p != end)
    throw std::invalid_argument("cannot parse \"" + std::string(s) + "\" in " + context);
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

json to_json(const Hypergraph& h, const Coloring* c) {
  json edges = json::array();
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    json hinges = json::array();
    for (HingeId x : h.edge_hinges(e)) hinges.push_back(h.hinge_vertex(x));
    json edge = {{"id", e}, {"hinges", std::move(hinges)}};
    if (c) edge["color"] = (*c)[e];
    edges.push_back(std::move(edge));
  }
  json doc = {{"vertices", h.vertex_count()}, {"edges", std::move(edges)}};
  if (c) doc["colors"] = c->k;
  return doc;
}

ColoredHypergraph hypergraph_from_json(const json& doc) {
  const Count n = need_count(doc, "vertices");
  if (n > kMaxVertices) bad("vertex count " + std::to_string(n) + " is too large");
  if (!doc.contains("edges") || !doc.at("edges").is_array()) bad("field \"edges\" must be an array");
  const json& edges = doc.at("edges");

  std::vector<std::vector<VertexId>> lists;
  std::vector<Color> colors;
  std::size_t colored = 0;
  Color top = 0;
  lists.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string where = "edges[" + std::to_string(e) + "]";
    const json& edge = edges[e];
    // An edge is either {"hinges": [...], ...} or a bare vertex list.
    const json& hinges = edge.is_object() ? edge.value("hinges", json()) : edge;
    if (!hinges.is_array() || hinges.empty()) bad(where + " needs a non-empty hinge list");
    if (edge.is_object() && edge.contains("id") && as_count(edge["id"], where + ".id") != e)
      bad(where + ".id must equal its position " + std::to_string(e));
    std::vector<VertexId> vs;
    for (const json& v : hinges) {
      const Count x = as_count(v, where + ".hinges");
      if (x >= n) bad(where + " attaches to vertex " + std::to_string(x) + " but there are " + std::to_string(n));
      vs.push_back(static_cast<VertexId>(x));
    }
    lists.push_back(std::move(vs));
    Color j = 1;
    if (edge.is_object() && edge.contains("color")) {
      j = static_cast<Color>(as_count(edge["color"], where + ".color"));
      if (j < 1) bad(where + ".color must be at least 1");
      ++colored;
    }
    colors.push_back(j);
    top = std::max(top, j);
  }
  if (colored != 0 && colored != edges.size()) bad("either every edge or no edge carries a color");

  ColoredHypergraph out;
  out.graph = Hypergraph::from_edges(n, lists);
  out.coloring.edge_color = std::move(colors);
  out.coloring.k = doc.contains("colors") ? need_count(doc, "colors") : std::max<Count>(top, 1);
  if (out.coloring.k < top) bad("\"colors\" is smaller than the largest edge color");
  return out;
}

json to_json(const FactorizationSpec& spec) {
  json doc = {{"lambda", spec.lambda}, {"n", spec.n}, {"r", spec.r}};
  if (spec.m > 0) doc["m"] = spec.m;
  if (!spec.part_sizes.empty()) doc["parts"] = spec.part_sizes;
  return doc;
}

FactorizationSpec spec_from_json(const json& doc) {
  FactorizationSpec spec;
  spec.lambda = need_count(doc, "lambda");
  spec.n = need_count(doc, "n");
  if (doc.contains("m")) spec.m = need_count(doc, "m");
  if (doc.contains("parts")) spec.part_sizes = count_array(doc.at("parts"), "spec.parts");
  if (!doc.contains("r")) bad("missing field \"r\"");
  spec.r = count_array(doc.at("r"), "spec.r");
  return spec;
}

json to_json(const Factorization& fz) {
  const Hypergraph& h = fz.graph;
  std::vector<json> factors(fz.spec.r.size());
  for (std::size_t j = 0; j < factors.size(); ++j)
    factors[j] = {{"class", j + 1}, {"r", fz.spec.r[j]}, {"edges", json::array()}};
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    json edge = json::array();
    for (HingeId x : h.edge_hinges(e)) edge.push_back(h.hinge_vertex(x));
    factors.at(fz.coloring[e] - 1)["edges"].push_back(std::move(edge));
  }
  return {{"spec", to_json(fz.spec)},
          {"vertices", h.vertex_count()},
          {"parts", fz.part_of},
          {"factors", factors},
          {"steps", fz.steps}};
}

Factorization factorization_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("spec")) bad("missing field \"spec\"");
  Factorization fz;
  fz.spec = spec_from_json(doc.at("spec"));
  const Count n = need_count(doc, "vertices");
  if (n > kMaxVertices) bad("vertex count " + std::to_string(n) + " is too large");
  if (!doc.contains("factors") || !doc.at("factors").is_array()) bad("field \"factors\" must be an array");
  const json& factors = doc.at("factors");

  std::vector<std::vector<VertexId>> edges;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const std::string where = "factors[" + std::to_string(j) + "]";
    const json& f = factors[j];
    if (!f.is_object() || !f.contains("edges") || !f.at("edges").is_array()) bad(where + ".edges must be an array");
    for (const json& e : f.at("edges")) {
      if (!e.is_array() || e.empty()) bad(where + " has an empty edge");
      std::vector<VertexId> vs;
      for (const json& v : e) {
        const Count x = as_count(v, where + ".edges");
        if (x >= n) bad(where + " uses vertex " + std::to_string(x) + " but there are " + std::to_string(n));
        vs.push_back(static_cast<VertexId>(x));
      }
      edges.push_back(std::move(vs));
      fz.coloring.edge_color.push_back(static_cast<Color>(j + 1));
    }
  }
  fz.coloring.k = factors.size();
  fz.graph = Hypergraph::from_edges(n, edges);
  if (doc.contains("parts")) {
    for (Count p : count_array(doc.at("parts"), "parts")) fz.part_of.push_back(static_cast<VertexId>(p));
  } else {
    for (VertexId v = 0; v < n; ++v) fz.part_of.push_back(v);
  }
  if (doc.contains("steps")) fz.steps = need_count(doc, "steps");
  return fz;
}

json to_json(const Detachment& d) {
  return {{"hypergraph", to_json(d.graph, &d.coloring)},
          {"amalgamation", {{"psi", d.psi.psi()}, {"g", d.psi.number_function()}}},
          {"steps", d.steps}};
}

DetachedDocument detachment_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("hypergraph")) bad("missing field \"hypergraph\"");
  if (!doc.contains("amalgamation") || !doc.at("amalgamation").contains("psi"))
    bad("missing field \"amalgamation.psi\"");
  DetachedDocument out{hypergraph_from_json(doc.at("hypergraph")), {}};
  std::vector<VertexId> psi;
  Count targets = 0;
  for (Count w : count_array(doc.at("amalgamation").at("psi"), "amalgamation.psi")) {
    psi.push_back(static_cast<VertexId>(w));
    targets = std::max(targets, w + 1);
  }
  if (doc.at("amalgamation").contains("g"))
    targets = count_array(doc.at("amalgamation").at("g"), "amalgamation.g").size();
  if (psi.size() != out.detached.graph.vertex_count())
    bad("amalgamation.psi has " + std::to_string(psi.size()) + " entries for " +
        std::to_string(out.detached.graph.vertex_count()) + " vertices");
  out.psi = AmalgamationMap(std::move(psi), targets);
  return out;
}

json to_json(const VerificationReport& report) {
  json tallies = json::array();
  for (const auto& t : report.tallies())
    tallies.push_back({{"check", t.check}, {"passed", t.passed}, {"failed", t.failed}});
  json failures = json::array();
  for (const auto& line : report.lines()) {
    if (line.pass) continue;
    failures.push_back({{"check", line.check},
                        {"subject", line.subject},
                        {"observed", line.observed},
                        {"allowed", {line.lo, line.hi}}});
  }
  return {{"passed", report.passed()},
          {"checks", report.checks()},
          {"failed", report.failures()},
          {"tallies", std::move(tallies)},
          {"failures", std::move(failures)}};
}

std::vector<Count> parse_number_function(const std::string& text, std::size_t vertex_count) {
  std::vector<Count> g(vertex_count, 1);
  if (trim(text).empty()) return g;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("expected v:count, got \"" + std::string(item) + "\"");
    const auto v = parse_uint(trim(item.substr(0, colon)), "--g");
    const auto count = parse_uint(trim(item.substr(colon + 1)), "--g");
    if (v >= vertex_count)
      throw std::invalid_argument("--g names vertex " + std::to_string(v) + " but the input has " +
                                  std::to_string(vertex_count));
    g[v] = count;
  }
  return g;
}

std::vector<Count> parse_count_list(const std::string& text) {
  std::vector<Count> out;
  for (std::string_view item : split(text, ',')) {
    item = trim(item);
    const auto x = item.find('x');
    if (x == std::string_view::npos) {
      out.push_back(parse_uint(item, "list"));
      continue;
    }
    const auto value = parse_uint(trim(item.substr(0, x)), "list");
    const auto times = parse_uint(trim(item.substr(x + 1)), "list");
    if (times == 0 || times > 100000) throw std::invalid_argument("bad repeat count in \"" + std::string(item) + "\"");
    out.insert(out.end(), times, value);
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(1) << "\n";
}

}  // namespace hyperfactor
