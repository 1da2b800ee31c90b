#pragma once

#include <string>
#include <utility>

#include "lhg/hypergraph.hpp"
#include "lhg/signature.hpp"
#include "lhg/word.hpp"

namespace lhg {

LinearHypergraph empty_graph();
LinearHypergraph identity(const Word& n);

// One edge labelled `name`, its sources fed by the inputs and its targets
// feeding the outputs. Throws TypeError for an unknown name.
LinearHypergraph generator(const std::string& name, const Signature& sig);
LinearHypergraph generator(const std::string& name, const GeneratorType& type);
// A single identity edge on a wire of object `label`.
LinearHypergraph identity_edge(const std::string& label = "");

// The block swap, built directly: inputs A then B, outputs C then D, with
// A wired to D and B wired to C.
LinearHypergraph swap(const Word& m, const Word& n);
// The same swap built by the recursive definition from single crossings.
LinearHypergraph swap_recursive(const Word& m, const Word& n);

// Operands sharing atoms are freshened first. Throws TypeError on a type or
// object mismatch.
LinearHypergraph compose(const LinearHypergraph& f, const LinearHypergraph& g);
LinearHypergraph tensor(const LinearHypergraph& f, const LinearHypergraph& g);
LinearHypergraph trace(const Word& x, const LinearHypergraph& f);

// Traces by closing each traced wire through an identity edge, so that f
// embeds into the result; returns the embedding as well.
std::pair<LinearHypergraph, Homomorphism> trace_mono(const Word& x, const LinearHypergraph& f);

}  // namespace lhg
