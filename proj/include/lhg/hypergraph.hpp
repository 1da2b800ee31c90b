#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lhg/ids.hpp"
#include "lhg/signature.hpp"
#include "lhg/word.hpp"

namespace lhg {

// Where a vertex is attached: an edge, or the interface when empty.
using Attachment = std::optional<EdgeId>;

// A linear hypergraph. Vertex orders are positional. Vertex labels are
// stored only when non-empty; a missing entry is the anonymous object.
// The fields are public so that arbitrary (possibly malformed) structures
// can be built and then checked with validate().
struct LinearHypergraph {
  std::vector<VertexId> targets;
  std::vector<VertexId> sources;
  std::vector<EdgeId> edges;
  std::unordered_map<VertexId, Attachment> left;
  std::unordered_map<VertexId, Attachment> right;
  std::unordered_map<VertexId, VertexId> conn;
  std::unordered_map<EdgeId, std::string> labels;
  std::unordered_map<VertexId, std::string> vtlabels;
  std::unordered_map<VertexId, std::string> vslabels;

  std::vector<VertexId> inputs() const;
  std::vector<VertexId> outputs() const;
  std::vector<VertexId> edge_sources(EdgeId e) const;
  std::vector<VertexId> edge_targets(EdgeId e) const;
  const std::string& target_label(VertexId v) const;
  const std::string& source_label(VertexId v) const;
  Word dom() const;
  Word cod() const;
  bool is_identity_edge(EdgeId e) const;
  std::size_t vertex_count() const { return targets.size() + sources.size(); }

  friend bool operator==(const LinearHypergraph&, const LinearHypergraph&) = default;
};

// Port structure of a valid graph, precomputed for repeated queries.
struct Incidence {
  struct Port {
    Attachment edge;        // empty for the interface
    std::size_t index = 0;  // position among the edge's ports or the interface
  };
  std::unordered_map<VertexId, Port> target_port;
  std::unordered_map<VertexId, Port> source_port;
  std::unordered_map<EdgeId, std::vector<VertexId>> edge_targets;
  std::unordered_map<EdgeId, std::vector<VertexId>> edge_sources;
  std::unordered_map<VertexId, VertexId> conn_inverse;
  std::vector<VertexId> inputs;
  std::vector<VertexId> outputs;

  explicit Incidence(const LinearHypergraph& h);
};

struct Violation {
  std::string clause;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Structural well-formedness; arities of identity edges are checked, other
// labels are unconstrained.
ValidationReport validate(const LinearHypergraph& h);
// Additionally checks every label against the signature.
ValidationReport validate(const LinearHypergraph& h, const Signature& sig);

struct Homomorphism {
  std::unordered_map<VertexId, VertexId> targets;
  std::unordered_map<VertexId, VertexId> sources;
  std::unordered_map<EdgeId, EdgeId> edges;
  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;
};

Homomorphism identity_homomorphism(const LinearHypergraph& h);
Homomorphism compose(const Homomorphism& first, const Homomorphism& second);

bool is_homomorphism(const Homomorphism& h, const LinearHypergraph& from, const LinearHypergraph& to);
bool is_embedding(const Homomorphism& h, const LinearHypergraph& from, const LinearHypergraph& to);
// Bijective homomorphism preserving the ordered inputs and outputs.
bool is_isomorphism(const Homomorphism& h, const LinearHypergraph& from, const LinearHypergraph& to);
std::optional<Homomorphism> inverse(const Homomorphism& h);

std::optional<Homomorphism> find_isomorphism(const LinearHypergraph& f, const LinearHypergraph& g);
bool isomorphic(const LinearHypergraph& f, const LinearHypergraph& g);

// Renames atoms by `pi`; atoms not in the map are kept. Throws Error if the
// renaming identifies two atoms of h.
LinearHypergraph rename(const LinearHypergraph& h, const std::unordered_map<std::uint64_t, std::uint64_t>& pi);
LinearHypergraph freshen(const LinearHypergraph& h);
// Like freshen, also returning the renaming.
LinearHypergraph freshen(const LinearHypergraph& h, std::unordered_map<std::uint64_t, std::uint64_t>& pi);
std::vector<std::uint64_t> atoms(const LinearHypergraph& h);
bool shares_atoms(const LinearHypergraph& a, const LinearHypergraph& b);

// Renumbers atoms 0, 1, 2, ... by a breadth-first walk from the inputs and
// outputs, and reorders edges by first visit. Isomorphic inputs of the same
// shape give equal results up to the order of closed components.
LinearHypergraph canonical(const LinearHypergraph& h);

// Removes every identity edge, splicing the wire through it.
LinearHypergraph smooth(const LinearHypergraph& h);
// Inserts an identity edge on the wire that enters target w.
LinearHypergraph expand(const LinearHypergraph& h, VertexId w);
// Like expand, returning the new edge.
LinearHypergraph expand(const LinearHypergraph& h, VertexId w, EdgeId& inserted);

// Vertices are the sources of the linear graph; `inputs` and `outputs`
// record which vertices the interface produces and consumes.
struct SimpleHypergraph {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::unordered_map<EdgeId, std::vector<VertexId>> src;
  std::unordered_map<EdgeId, std::vector<VertexId>> tgt;
  std::unordered_map<EdgeId, std::string> labels;
  std::vector<VertexId> inputs;
  std::vector<VertexId> outputs;
};

struct SimpleHomomorphism {
  std::unordered_map<VertexId, VertexId> vertices;
  std::unordered_map<EdgeId, EdgeId> edges;
};

SimpleHypergraph to_simple(const LinearHypergraph& h);
SimpleHomomorphism to_simple(const Homomorphism& h);
// Every vertex is produced exactly once (by an edge or as an input) and
// consumed exactly once (by an edge or as an output).
bool is_linear(const SimpleHypergraph& h);
bool is_simple_homomorphism(const SimpleHomomorphism& h, const SimpleHypergraph& from,
                            const SimpleHypergraph& to);

}  // namespace lhg
