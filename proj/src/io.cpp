#include "lhg/io.hpp"

#include <sstream>
#include <vector>

#include "lhg/error.hpp"

namespace lhg {

using nlohmann::json;

namespace {

json attachment_json(const Attachment& a) { return a ? json(a->value) : json(nullptr); }

std::uint64_t read_id(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
    throw ParseError(std::string(where) + " needs a non-negative integer \"" + key + "\"", 0, 0);
  }
  return j.at(key).get<std::uint64_t>();
}

Attachment read_attachment(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw ParseError(std::string(where) + " needs \"" + key + "\"", 0, 0);
  if (j.at(key).is_null()) return std::nullopt;
  return EdgeId{read_id(j, key, where)};
}

}  // namespace

json graph_to_json(const LinearHypergraph& h) {
  json targets = json::array();
  for (VertexId t : h.targets) {
    json v = {{"id", t.value}, {"left", attachment_json(h.left.at(t))}, {"conn", h.conn.at(t).value}};
    if (const auto& l = h.target_label(t); !l.empty()) v["label"] = l;
    targets.push_back(std::move(v));
  }
  json sources = json::array();
  for (VertexId s : h.sources) {
    json v = {{"id", s.value}, {"right", attachment_json(h.right.at(s))}};
    if (const auto& l = h.source_label(s); !l.empty()) v["label"] = l;
    sources.push_back(std::move(v));
  }
  json edges = json::array();
  for (EdgeId e : h.edges) edges.push_back({{"id", e.value}, {"label", h.labels.at(e)}});
  return {{"targets", targets}, {"sources", sources}, {"edges", edges}};
}

LinearHypergraph graph_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("a graph is a JSON object", 0, 0);
  for (const char* key : {"targets", "sources", "edges"}) {
    if (!j.contains(key) || !j.at(key).is_array()) {
      throw ParseError(std::string("missing array \"") + key + "\"", 0, 0);
    }
  }
  LinearHypergraph h;
  std::uint64_t max_id = 0;
  auto note = [&](std::uint64_t x) { max_id = std::max(max_id, x); };
  for (const json& v : j.at("targets")) {
    VertexId t{read_id(v, "id", "target")};
    h.targets.push_back(t);
    h.left[t] = read_attachment(v, "left", "target");
    h.conn[t] = VertexId{read_id(v, "conn", "target")};
    if (v.contains("label")) h.vtlabels[t] = v.at("label").get<std::string>();
    note(t.value);
  }
  for (const json& v : j.at("sources")) {
    VertexId s{read_id(v, "id", "source")};
    h.sources.push_back(s);
    h.right[s] = read_attachment(v, "right", "source");
    if (v.contains("label")) h.vslabels[s] = v.at("label").get<std::string>();
    note(s.value);
  }
  for (const json& v : j.at("edges")) {
    EdgeId e{read_id(v, "id", "edge")};
    if (!v.contains("label") || !v.at("label").is_string()) throw ParseError("edge needs a \"label\"", 0, 0);
    h.edges.push_back(e);
    h.labels[e] = v.at("label").get<std::string>();
    note(e.value);
  }
  if (auto report = validate(h); !report.ok()) throw Error("invalid graph: " + report.to_string());
  reserve_atoms_through(max_id);
  return h;
}

std::string save_graph(const LinearHypergraph& h) { return graph_to_json(canonical(h)).dump(2) + "\n"; }

LinearHypergraph load_graph(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0, e.byte);
  }
  try {
    return graph_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

std::string to_dot(const LinearHypergraph& h) {
  Incidence inc(h);
  std::ostringstream out;
  out << "digraph G {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < inc.inputs.size(); ++i) {
    out << "  in" << i << " [shape=point, xlabel=\"" << i << "\"];\n";
  }
  for (std::size_t i = 0; i < inc.outputs.size(); ++i) {
    out << "  out" << i << " [shape=point, xlabel=\"" << i << "\"];\n";
  }
  for (EdgeId e : h.edges) {
    out << "  e" << e.value << " [shape=box, label=\"" << (h.is_identity_edge(e) ? "id" : h.labels.at(e))
        << "\"];\n";
  }
  for (VertexId t : h.targets) {
    VertexId s = h.conn.at(t);
    const auto& tp = inc.target_port.at(t);
    const auto& sp = inc.source_port.at(s);
    out << "  " << (tp.edge ? "e" + std::to_string(tp.edge->value) : "in" + std::to_string(tp.index)) << " -> "
        << (sp.edge ? "e" + std::to_string(sp.edge->value) : "out" + std::to_string(sp.index));
    std::vector<std::string> attrs;
    if (tp.edge) attrs.push_back("taillabel=\"" + std::to_string(tp.index) + "\"");
    if (sp.edge) attrs.push_back("headlabel=\"" + std::to_string(sp.index) + "\"");
    if (!h.target_label(t).empty()) attrs.push_back("label=\"" + h.target_label(t) + "\"");
    for (std::size_t i = 0; i < attrs.size(); ++i) out << (i == 0 ? " [" : ", ") << attrs[i];
    out << (attrs.empty() ? ";\n" : "];\n");
  }
  out << "}\n";
  return out.str();
}

}  // namespace lhg
