#ifndef HYPERFACTOR_IO_HPP
#define HYPERFACTOR_IO_HPP

#include "json.hpp"
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperfactor/detach.hpp"
#include "hyperfactor/factorize.hpp"
#include "hyperfactor/hypergraph.hpp"
#include "hyperfactor/report.hpp"

namespace hyperfactor {

// Malformed JSON document (wrong shape, bad ids, missing fields).
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {"vertices": N, "colors": k, "edges": [{"hinges": [v, ...], "color": j}, ...]}
// Hinge ids are consecutive edge by edge. Colors are optional on input; when
// every edge lacks one the coloring is uniform with k = 1.
struct ColoredHypergraph {
  Hypergraph graph;
  Coloring coloring;
};

nlohmann::json to_json(const Hypergraph& h, const Coloring* c = nullptr);
ColoredHypergraph hypergraph_from_json(const nlohmann::json& doc);

// {"spec": {...}, "vertices": N, "parts": [...], "factors": [{"class", "r", "edges"}]}
nlohmann::json to_json(const Factorization& fz);
// Rebuilds the hypergraph, coloring (class = factor index) and part labels.
Factorization factorization_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const FactorizationSpec& spec);
FactorizationSpec spec_from_json(const nlohmann::json& doc);

// {"hypergraph": ..., "amalgamation": {"psi": [...], "g": [...]}}
nlohmann::json to_json(const Detachment& d);
struct DetachedDocument {
  ColoredHypergraph detached;
  AmalgamationMap psi;
};
DetachedDocument detachment_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const VerificationReport& report);

// Parses "v:count,v:count" into a number function over `vertex_count`
// vertices; unlisted vertices get 1.
std::vector<Count> parse_number_function(const std::string& text, std::size_t vertex_count);

// Parses "2,2,1x28,3x2" into a list; "AxB" repeats A B times.
std::vector<Count> parse_count_list(const std::string& text);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace hyperfactor

#endif  // HYPERFACTOR_IO_HPP
