#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lhg/hypergraph.hpp"
#include "lhg/signature.hpp"
#include "lhg/term.hpp"

namespace lhg {

// Random well-typed terms over a signature, for property runs.
class TermGenerator {
 public:
  struct Options {
    bool allow_trace = true;
    std::size_t max_width = 5;
  };

  TermGenerator(const Signature& sig, std::uint64_t seed);
  TermGenerator(const Signature& sig, std::uint64_t seed, Options options);

  // A term of the given domain and depth at most `depth`.
  Term from(const Word& dom, std::size_t depth);
  // A term with a random small domain.
  Term any(std::size_t depth);
  // A term of exactly the given type. Needs, for every object involved, a
  // generator that discards it and one that creates it.
  Term between(const Word& dom, const Word& cod, std::size_t depth);
  // Wires of cod(t) rearranged, discarded or created to reach `cod`.
  std::optional<Term> adapter(const Word& from, const Word& to);

  Word random_word(std::size_t max_length);
  const Signature& signature() const { return sig_; }
  TermType type(const Term& t) const { return type_of(t, sig_); }
  std::mt19937_64& rng() { return rng_; }
  std::size_t below(std::size_t n);
  bool chance(double p);

 private:
  Term layer(const Word& dom);
  std::optional<Term> traced(const Word& dom, std::size_t depth);

  const Signature& sig_;
  std::mt19937_64 rng_;
  Options options_;
  std::vector<std::string> objects_;
};

struct RandomGraphOptions {
  std::size_t max_edges = 6;
  std::size_t max_vertices = 14;  // targets plus sources
  std::size_t min_edges = 0;
};

// A random valid graph with shuffled vertex and edge orders.
LinearHypergraph random_graph(const Signature& sig, std::mt19937_64& rng, const RandomGraphOptions& options = {});

// A small PROP signature with generators of several arities.
Signature sample_prop_signature();
// A small signature with object labels.
Signature sample_labelled_signature();

}  // namespace lhg
