#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lhg/random.hpp"
#include "lhg/signature.hpp"
#include "lhg/term.hpp"

namespace lhg {

struct AxiomInstance {
  Term lhs;
  Term rhs;
};

// One equation scheme of symmetric traced monoidal categories, instantiated
// with random operands drawn from a term generator.
struct AxiomScheme {
  std::string name;
  std::function<AxiomInstance(TermGenerator&, std::size_t depth)> instantiate;
};

const std::vector<AxiomScheme>& stmc_axiom_schemes();

struct AxiomResult {
  std::string scheme;
  std::size_t instances = 0;
  std::size_t equal = 0;           // instances whose sides have isomorphic graphs
  std::size_t graphs_checked = 0;  // intermediate constructor outputs validated
  std::size_t invalid_graphs = 0;
  std::optional<AxiomInstance> counterexample;
  bool passed() const { return equal == instances && invalid_graphs == 0; }
};

// Runs every scheme `instances` times. Each side is interpreted bottom-up
// and every intermediate graph is validated.
std::vector<AxiomResult> run_axiom_suite(const Signature& sig, std::uint64_t seed, std::size_t instances,
                                         std::size_t depth = 2);

// Interprets t, validating every intermediate graph. Returns the number of
// graphs checked and adds the number of invalid ones to `invalid`.
std::size_t interpret_validating(const Term& t, const Signature& sig, std::size_t& invalid);

}  // namespace lhg
