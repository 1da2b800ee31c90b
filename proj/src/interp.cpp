#include "lhg/interp.hpp"

#include "lhg/error.hpp"
#include "lhg/ops.hpp"

namespace lhg {

LinearHypergraph interpret(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case Term::Kind::Gen:
      return generator(t.name(), sig);
    case Term::Kind::Id:
      return identity(t.word());
    case Term::Kind::Swap:
      return swap(t.word(), t.second_word());
    case Term::Kind::Seq:
      return compose(interpret(t.left(), sig), interpret(t.right(), sig));
    case Term::Kind::Tensor:
      return tensor(interpret(t.left(), sig), interpret(t.right(), sig));
    case Term::Kind::Trace:
      return trace(t.word(), interpret(t.body(), sig));
  }
  throw TypeError("malformed term");
}

bool equal_mod_stmc(const Term& s, const Term& t, const Signature& sig) {
  TermType ts = type_of(s, sig);
  TermType tt = type_of(t, sig);
  if (ts != tt) {
    throw TypeError("terms have different types: " + render_word(ts.dom) + " -> " + render_word(ts.cod) +
                    " and " + render_word(tt.dom) + " -> " + render_word(tt.cod));
  }
  return isomorphic(interpret(s, sig), interpret(t, sig));
}

}  // namespace lhg
