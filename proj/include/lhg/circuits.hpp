#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lhg/hypergraph.hpp"
#include "lhg/rewrite.hpp"
#include "lhg/signature.hpp"
#include "lhg/term.hpp"

namespace lhg {

// A finite join-semilattice with a least element.
class ValueLattice {
 public:
  // Throws Error unless join is total, associative, commutative and
  // idempotent with `bottom` as its unit.
  ValueLattice(std::vector<std::string> values, std::string bottom,
               std::map<std::pair<std::string, std::string>, std::string> join);

  const std::vector<std::string>& values() const { return values_; }
  const std::string& bottom() const { return bottom_; }
  bool contains(const std::string& v) const;
  const std::string& join(const std::string& a, const std::string& b) const;
  bool leq(const std::string& a, const std::string& b) const;
  // Number of steps in the longest strictly increasing chain.
  std::size_t height() const;

 private:
  std::vector<std::string> values_;
  std::string bottom_;
  std::map<std::pair<std::string, std::string>, std::string> join_;
};

struct Gate {
  std::string name;
  std::size_t arity = 0;
  std::map<std::vector<std::string>, std::string> table;
};

// Values 0 -> 1, gates m -> 1, and fork, join, stub and delay.
class CircuitSignature {
 public:
  static constexpr const char* kFork = "fork";
  static constexpr const char* kJoin = "join";
  static constexpr const char* kStub = "stub";
  static constexpr const char* kDelay = "delay";

  // Throws Error when a table is partial or not monotone, or when a name
  // clashes.
  CircuitSignature(ValueLattice lattice, std::vector<Gate> gates);

  const ValueLattice& lattice() const { return lattice_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const Gate* find_gate(const std::string& name) const;
  const std::string& apply(const Gate& gate, const std::vector<std::string>& args) const;
  const Signature& signature() const { return signature_; }

 private:
  ValueLattice lattice_;
  std::vector<Gate> gates_;
  Signature signature_;
};

// `values: a, b`, `bottom: a`, `join: a b -> b` rows and
// `gate NAME arity N: a b -> c; ...` tables, `#` comments. Unlisted joins
// follow from commutativity, idempotence and the unit law.
CircuitSignature parse_circuit_signature(std::string_view text);

// {bot, top} with and/or.
CircuitSignature two_point_circuits();
// Belnap's four values bot, false, true, top ordered by information, with
// and/or/not.
CircuitSignature belnap_circuits();

Term copy_term(std::size_t n);   // n -> 2n
Term del_term(std::size_t n);    // n -> 0
Term merge_term(std::size_t n);  // 2n -> n, pointwise join of two buses

// One rule per row of the Cartesian axiom table, instantiated for every
// generator where the row quantifies over morphisms.
std::vector<RewriteRule> cartesian_rules(const CircuitSignature& sig);

// The Cartesian rules that terminate together: delete-naturality for every
// generator and both counit laws.
std::vector<RewriteRule> cartesian_evaluation_rules(const CircuitSignature& sig);

// Value, gate and delay rules, including streaming for every gate and value
// tuple.
std::vector<RewriteRule> circuit_rules(const CircuitSignature& sig);

// A set of edges together with the wires that enter and leave it, in host
// order.
struct EdgeRegion {
  std::vector<EdgeId> edges;
  LinearHypergraph graph;          // the region as a graph: entering wires in, leaving wires out
  std::vector<VertexId> internal;  // targets of wires between region edges
};

EdgeRegion region_of(const LinearHypergraph& g, const std::vector<EdgeId>& edges);

// Strongly connected sets of edges that lie on a cycle, in topological
// order of the condensation.
std::vector<std::vector<EdgeId>> feedback_components(const LinearHypergraph& g);

// Edges from which no output of g can be reached.
std::vector<EdgeId> dead_edges(const LinearHypergraph& g);

// Replaces a region with stubs on its entering wires.
RewriteRule collection_rule(const EdgeRegion& region, const CircuitSignature& sig);
// Replaces a delay-free feedback region by `iterations` unrolled steps
// started from bottom.
RewriteRule closure_rule(const EdgeRegion& region, const CircuitSignature& sig, std::size_t iterations);
// Unfolds a feedback region once.
RewriteRule unfold_rule(const EdgeRegion& region, const CircuitSignature& sig);

enum class Outcome { Values, Unproductive, NonValue };

struct EvaluationOptions {
  std::size_t max_steps = 10000;
};

struct Evaluation {
  Outcome outcome = Outcome::NonValue;
  std::vector<std::string> outputs;  // filled for Values
  LinearHypergraph graph;            // final graph
  std::vector<RewriteStep> log;
  std::size_t steps = 0;
};

// Prepares the evaluation rules once so that many circuits can share them.
class CircuitEvaluator {
 public:
  explicit CircuitEvaluator(CircuitSignature sig);
  const CircuitSignature& signature() const { return sig_; }
  Evaluation run(const LinearHypergraph& circuit, const std::vector<std::string>& inputs,
                 const EvaluationOptions& options = {}) const;

 private:
  CircuitSignature sig_;
  std::vector<PreparedRule> rules_;
};

// Feeds the input values, then rewrites until the outputs are values, no
// rule applies, or the step budget runs out. Throws TypeError when the
// inputs do not fit the circuit.
Evaluation evaluate(const LinearHypergraph& circuit, const std::vector<std::string>& inputs,
                    const CircuitSignature& sig, const EvaluationOptions& options = {});
Evaluation evaluate(const Term& circuit, const std::vector<std::string>& inputs, const CircuitSignature& sig,
                    const EvaluationOptions& options = {});

std::string to_string(Outcome outcome);

}  // namespace lhg
