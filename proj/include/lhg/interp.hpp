#pragma once

#include "lhg/hypergraph.hpp"
#include "lhg/signature.hpp"
#include "lhg/term.hpp"

namespace lhg {

// Structural translation of a term into a graph. Throws TypeError on
// ill-typed input.
LinearHypergraph interpret(const Term& t, const Signature& sig);

// Equality in the free traced monoidal category, decided by isomorphism of
// the interpretations. Throws TypeError when the types differ.
bool equal_mod_stmc(const Term& s, const Term& t, const Signature& sig);

}  // namespace lhg
