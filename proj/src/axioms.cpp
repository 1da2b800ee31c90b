#include "lhg/axioms.hpp"

#include "lhg/interp.hpp"
#include "lhg/ops.hpp"

namespace lhg {

namespace {

// Traced and swapped blocks: one or two objects.
Word block(TermGenerator& g) {
  Word w;
  while (w.empty()) w = g.random_word(2);
  return w;
}

LinearHypergraph interpret_rec(const Term& t, const Signature& sig, std::size_t& checked, std::size_t& invalid) {
  LinearHypergraph h;
  switch (t.kind()) {
    case Term::Kind::Gen:
      h = generator(t.name(), sig);
      break;
    case Term::Kind::Id:
      h = identity(t.word());
      break;
    case Term::Kind::Swap:
      h = swap(t.word(), t.second_word());
      break;
    case Term::Kind::Seq:
      h = compose(interpret_rec(t.left(), sig, checked, invalid), interpret_rec(t.right(), sig, checked, invalid));
      break;
    case Term::Kind::Tensor:
      h = tensor(interpret_rec(t.left(), sig, checked, invalid), interpret_rec(t.right(), sig, checked, invalid));
      break;
    case Term::Kind::Trace:
      h = trace(t.word(), interpret_rec(t.body(), sig, checked, invalid));
      break;
  }
  ++checked;
  if (!validate(h, sig).ok()) ++invalid;
  return h;
}

AxiomInstance left_identity(TermGenerator& g, std::size_t d) {
  Term f = g.any(d);
  return {Term::seq(Term::id(g.type(f).dom), f), f};
}

AxiomInstance right_identity(TermGenerator& g, std::size_t d) {
  Term f = g.any(d);
  return {Term::seq(f, Term::id(g.type(f).cod)), f};
}

AxiomInstance associativity(TermGenerator& g, std::size_t d) {
  Term f = g.any(d);
  Term h = g.from(g.type(f).cod, d);
  Term k = g.from(g.type(h).cod, d);
  return {Term::seq(Term::seq(f, h), k), Term::seq(f, Term::seq(h, k))};
}

AxiomInstance tensor_left_unit(TermGenerator& g, std::size_t d) {
  Term f = g.any(d);
  return {Term::tensor(Term::id({}), f), f};
}

AxiomInstance tensor_right_unit(TermGenerator& g, std::size_t d) {
  Term f = g.any(d);
  return {Term::tensor(f, Term::id({})), f};
}

AxiomInstance tensor_associativity(TermGenerator& g, std::size_t d) {
  Term f = g.any(d);
  Term h = g.any(d);
  Term k = g.any(d);
  return {Term::tensor(Term::tensor(f, h), k), Term::tensor(f, Term::tensor(h, k))};
}

AxiomInstance bifunctoriality(TermGenerator& g, std::size_t d) {
  Term f = g.any(d);
  Term h = g.any(d);
  Term k = g.from(g.type(f).cod, d);
  Term l = g.from(g.type(h).cod, d);
  return {Term::seq(Term::tensor(f, h), Term::tensor(k, l)), Term::tensor(Term::seq(f, k), Term::seq(h, l))};
}

AxiomInstance identity_tensor(TermGenerator& g, std::size_t) {
  Word m = g.random_word(3);
  Word n = g.random_word(3);
  return {Term::tensor(Term::id(m), Term::id(n)), Term::id(concat(m, n))};
}

AxiomInstance swap_naturality(TermGenerator& g, std::size_t d) {
  Term f = g.any(d);
  Term h = g.any(d);
  TermType tf = g.type(f);
  TermType th = g.type(h);
  return {Term::seq(Term::tensor(f, h), Term::swap(tf.cod, th.cod)),
          Term::seq(Term::swap(tf.dom, th.dom), Term::tensor(h, f))};
}

AxiomInstance self_invertibility(TermGenerator& g, std::size_t) {
  Word m = g.random_word(3);
  Word n = g.random_word(3);
  return {Term::seq(Term::swap(m, n), Term::swap(n, m)), Term::id(concat(m, n))};
}

AxiomInstance hexagon(TermGenerator& g, std::size_t) {
  Word m = g.random_word(3);
  Word n = g.random_word(3);
  Word p = g.random_word(3);
  return {Term::seq(Term::tensor(Term::swap(m, n), Term::id(p)), Term::tensor(Term::id(n), Term::swap(m, p))),
          Term::swap(m, concat(n, p))};
}

AxiomInstance tightening(TermGenerator& g, std::size_t d) {
  Word x = block(g);
  Word a = g.random_word(2);
  Word b = g.random_word(2);
  Term f = g.between(concat(x, a), concat(x, b), d);
  Term pre = g.between(g.random_word(2), a, d);
  Term post = g.from(b, d);
  Term lhs = Term::trace(
      x, Term::seq(Term::seq(Term::tensor(Term::id(x), pre), f), Term::tensor(Term::id(x), post)));
  Term rhs = Term::seq(Term::seq(pre, Term::trace(x, f)), post);
  return {lhs, rhs};
}

AxiomInstance superposing(TermGenerator& g, std::size_t d) {
  Word x = block(g);
  Term f = g.between(concat(x, g.random_word(2)), concat(x, g.random_word(2)), d);
  Term h = g.any(d);
  return {Term::trace(x, Term::tensor(f, h)), Term::tensor(Term::trace(x, f), h)};
}

AxiomInstance yanking(TermGenerator& g, std::size_t) {
  Word x = block(g);
  return {Term::trace(x, Term::swap(x, x)), Term::id(x)};
}

AxiomInstance sliding(TermGenerator& g, std::size_t d) {
  Word x = block(g);
  Word y = block(g);
  Word a = g.random_word(2);
  Word b = g.random_word(2);
  Term f = g.between(concat(y, a), concat(x, b), d);
  Term k = g.between(x, y, d);
  return {Term::trace(x, Term::seq(Term::tensor(k, Term::id(a)), f)),
          Term::trace(y, Term::seq(f, Term::tensor(k, Term::id(b))))};
}

AxiomInstance exchange(TermGenerator& g, std::size_t d) {
  Word x = block(g);
  Word y = block(g);
  Word m = g.random_word(2);
  Word n = g.random_word(2);
  Term f = g.between(concat(concat(x, y), m), concat(concat(x, y), n), d);
  Term lhs = Term::trace(y, Term::trace(x, f));
  Term conj = Term::seq(Term::seq(Term::tensor(Term::swap(y, x), Term::id(m)), f),
                        Term::tensor(Term::swap(x, y), Term::id(n)));
  return {lhs, Term::trace(x, Term::trace(y, conj))};
}

}  // namespace

std::size_t interpret_validating(const Term& t, const Signature& sig, std::size_t& invalid) {
  std::size_t checked = 0;
  interpret_rec(t, sig, checked, invalid);
  return checked;
}

const std::vector<AxiomScheme>& stmc_axiom_schemes() {
  static const std::vector<AxiomScheme> schemes = {
      {"left-identity", left_identity},
      {"right-identity", right_identity},
      {"associativity", associativity},
      {"tensor-left-unit", tensor_left_unit},
      {"tensor-right-unit", tensor_right_unit},
      {"tensor-associativity", tensor_associativity},
      {"bifunctoriality", bifunctoriality},
      {"identity-tensor", identity_tensor},
      {"swap-naturality", swap_naturality},
      {"self-invertibility", self_invertibility},
      {"hexagon", hexagon},
      {"tightening", tightening},
      {"superposing", superposing},
      {"yanking", yanking},
      {"sliding", sliding},
      {"exchange", exchange},
  };
  return schemes;
}

std::vector<AxiomResult> run_axiom_suite(const Signature& sig, std::uint64_t seed, std::size_t instances,
                                         std::size_t depth) {
  std::vector<AxiomResult> results;
  std::uint64_t stream = seed;
  for (const auto& scheme : stmc_axiom_schemes()) {
    TermGenerator gen(sig, stream++);
    AxiomResult r;
    r.scheme = scheme.name;
    for (std::size_t i = 0; i < instances; ++i) {
      AxiomInstance inst = scheme.instantiate(gen, depth);
      ++r.instances;
      std::size_t bad = 0;
      r.graphs_checked += interpret_validating(inst.lhs, sig, bad);
      r.graphs_checked += interpret_validating(inst.rhs, sig, bad);
      r.invalid_graphs += bad;
      bool eq = equal_mod_stmc(inst.lhs, inst.rhs, sig);
      if (eq) {
        ++r.equal;
      } else if (!r.counterexample) {
        r.counterexample = inst;
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace lhg
