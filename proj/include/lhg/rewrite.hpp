#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lhg/hypergraph.hpp"
#include "lhg/signature.hpp"
#include "lhg/term.hpp"

namespace lhg {

// A span lhs <- interface -> rhs with an edge-free interface. The interface
// has one wire per input and output of the sides, inputs first.
struct RewriteRule {
  std::string name;
  LinearHypergraph lhs;
  LinearHypergraph interface;
  LinearHypergraph rhs;
  Homomorphism left_leg;
  Homomorphism right_leg;
};

// Builds the interface and both legs, then saturates. Throws TypeError when
// the sides have different types.
RewriteRule rule_from_graphs(std::string name, const LinearHypergraph& lhs, const LinearHypergraph& rhs);
RewriteRule rule_from_terms(std::string name, const Term& lhs, const Term& rhs, const Signature& sig);

// Puts an identity edge on every wire running straight from an input to an
// output of either side, which makes both legs injective.
RewriteRule saturate_rule(const RewriteRule& rule);
bool legs_are_embeddings(const RewriteRule& rule);

// Every input of f is sent to an input by m or by n, and every output to an
// output by m or by n.
bool boundary_coherent(const LinearHypergraph& f, const Homomorphism& m, const LinearHypergraph& g,
                       const Homomorphism& n, const LinearHypergraph& h);

struct PushoutResult {
  LinearHypergraph graph;
  Homomorphism from_left;   // c -> graph
  Homomorphism from_right;  // r -> graph
};

// Glues c and r along k. Both maps must be embeddings; throws RewriteError
// naming a vertex where boundary coherence fails.
PushoutResult pushout(const LinearHypergraph& k, const LinearHypergraph& c, const Homomorphism& m,
                      const LinearHypergraph& r, const Homomorphism& n);

struct ComplementResult {
  LinearHypergraph context;
  Homomorphism interface_to_context;
  Homomorphism context_to_host;
};

// The host with the matched edges and non-interface vertices removed; the
// severed wires become interface wires of the context.
ComplementResult pushout_complement(const LinearHypergraph& k, const LinearHypergraph& l, const Homomorphism& leg,
                                    const LinearHypergraph& g, const Homomorphism& match);

// Pushout of simple hypergraphs along injective maps; a glued vertex is an
// input (output) only if it is one on both sides.
SimpleHypergraph simple_pushout(const SimpleHypergraph& k, const SimpleHypergraph& c, const SimpleHomomorphism& m,
                                const SimpleHypergraph& r, const SimpleHomomorphism& n);

// All embeddings of l into g, in a deterministic order that follows g's
// edge order.
std::vector<Homomorphism> find_matchings(const LinearHypergraph& l, const LinearHypergraph& g);
// Stops early when `visit` returns false.
void for_each_matching(const LinearHypergraph& l, const LinearHypergraph& g,
                       const std::function<bool(const Homomorphism&)>& visit);

// Complement, pushout, then smoothing unless identity edges are kept.
LinearHypergraph apply_rewrite(const LinearHypergraph& g, const RewriteRule& rule, const Homomorphism& match,
                               bool keep_identity_edges = false);

// A rule prepared for matching up to identity edges: every interface wire
// of the smoothed left side carries one identity edge, so a match may place
// the rule's boundary anywhere along a host wire.
struct PreparedRule {
  enum class WireKind { Input, Output, Bare };
  struct BoundaryWire {
    WireKind kind;
    std::size_t index;  // input or output position (input position for bare wires)
    VertexId core_port;  // edge port of the core at the inner end, unused for bare wires
    EdgeId identity;     // the identity edge carried in `rule.lhs`
  };
  RewriteRule rule;  // lhs is the expanded core
  LinearHypergraph core;
  std::vector<BoundaryWire> wires;
  bool trivial = false;  // both sides isomorphic
};

PreparedRule prepare_rule(const RewriteRule& rule);

// A match of a prepared rule's core: edges and edge ports mapped into the
// host, and one host wire (named by its target) per bare wire.
struct Redex {
  std::unordered_map<EdgeId, EdgeId> edges;
  std::unordered_map<VertexId, VertexId> targets;
  std::unordered_map<VertexId, VertexId> sources;
  std::vector<VertexId> bare_wires;
  std::vector<EdgeId> host_edges;  // images of the core edges in core order
};

// Identity edges of g take part in matching like any other edge, so redexes
// are meant to be searched in smooth hosts.
void for_each_redex(const PreparedRule& rule, const LinearHypergraph& g,
                    const std::function<bool(const Redex&)>& visit);
std::vector<Redex> find_redexes(const PreparedRule& rule, const LinearHypergraph& g);

// Inserts identity edges at the redex boundary, rewrites, then smooths.
LinearHypergraph apply_redex(const LinearHypergraph& g, const PreparedRule& rule, const Redex& redex,
                             bool keep_identity_edges = false);

enum class Strategy { Deterministic, Exhaustive };

struct RewritePolicy {
  std::size_t max_steps = 10000;
  Strategy strategy = Strategy::Deterministic;
  bool keep_identity_edges = false;
  bool canonicalize = true;  // renumber after every step for stable logs
};

struct RewriteStep {
  std::size_t index;
  std::string rule;
  std::vector<EdgeId> edges;
  std::string to_string() const;
};

struct NormalizeResult {
  LinearHypergraph graph;
  std::vector<RewriteStep> log;
  std::size_t steps = 0;
  bool budget_exhausted = false;
  std::vector<LinearHypergraph> normal_forms;  // exhaustive strategy only
};

// The host is smoothed first unless identity edges are kept.
// Deterministic: repeatedly applies the first rule, in list order, that has
// a redex, at its first redex. Exhaustive: explores every redex of every
// state up to the step budget and collects normal forms up to isomorphism.
NormalizeResult normalize(const LinearHypergraph& g, const std::vector<RewriteRule>& rules,
                          const RewritePolicy& policy = {});
NormalizeResult normalize(const LinearHypergraph& g, const std::vector<PreparedRule>& rules,
                          const RewritePolicy& policy = {});

// Rule files: one `name : lhs => rhs` per line, `#` comments.
std::vector<RewriteRule> parse_rules(std::string_view text, const Signature& sig);

}  // namespace lhg
