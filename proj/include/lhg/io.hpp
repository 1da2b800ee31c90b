#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "lhg/hypergraph.hpp"

namespace lhg {

// {"targets": [{"id", "left", "conn", "label"?}], "sources": [{"id",
// "right", "label"?}], "edges": [{"id", "label"}]}. Array order is the
// vertex order; "left"/"right" hold an edge id or null for the interface.
nlohmann::json graph_to_json(const LinearHypergraph& h);
// Throws ParseError on malformed input and Error when the result is not a
// valid linear hypergraph. Fresh ids allocated afterwards never collide
// with the loaded ones.
LinearHypergraph graph_from_json(const nlohmann::json& j);

// Canonically renumbered, pretty-printed.
std::string save_graph(const LinearHypergraph& h);
LinearHypergraph load_graph(std::string_view text);

// Graphviz rendering: boxes for edges, points for the interface, one arrow
// per wire.
std::string to_dot(const LinearHypergraph& h);

}  // namespace lhg
