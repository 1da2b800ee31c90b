#include <doctest.h>

#include <functional>

#include "lhg/axioms.hpp"
#include "lhg/error.hpp"
#include "lhg/interp.hpp"
#include "lhg/random.hpp"

using namespace lhg;

namespace {

std::size_t generator_count(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Gen:
      return 1;
    case Term::Kind::Id:
    case Term::Kind::Swap:
      return 0;
    case Term::Kind::Seq:
    case Term::Kind::Tensor:
      return generator_count(t.left()) + generator_count(t.right());
    case Term::Kind::Trace:
      return generator_count(t.body());
  }
  return 0;
}

}  // namespace

TEST_SUITE("interp") {
  TEST_CASE("one edge per generator occurrence, no edges for structure") {
    Signature sig = sample_prop_signature();
    TermGenerator gen(sig, 71);
    for (int i = 0; i < 100; ++i) {
      Term t = gen.any(5);
      auto h = interpret(t, sig);
      CHECK(validate(h, sig).ok());
      CHECK(h.edges.size() == generator_count(t));
      TermType ty = type_of(t, sig);
      CHECK(h.dom() == ty.dom);
      CHECK(h.cod() == ty.cod);
    }
  }

  TEST_CASE("named equations") {
    Signature sig = sample_prop_signature();
    auto eq = [&](const char* a, const char* b) {
      return equal_mod_stmc(parse_term(a, sig), parse_term(b, sig), sig);
    };
    CHECK(eq("tr 1 (swap 1 1)", "id 1"));
    CHECK(eq("tr 1 ((f * id 1) ; h)", "tr 1 (h ; (f * id 1))"));
    CHECK(eq("swap 1 1 ; swap 1 1", "id 2"));
    CHECK(eq("(f * g) ; swap 1 2", "swap 1 1 ; (g * f)"));
    CHECK(eq("tr 1 (tr 1 (h * id 1))", "tr 2 (h * id 1)"));
    CHECK(eq("tr 1 (h) * f", "tr 1 (h * f)"));
    CHECK(eq("f ; tr 1 (h)", "tr 1 ((id 1 * f) ; h)"));
    CHECK_FALSE(eq("h", "swap 1 1 ; h"));
    CHECK_FALSE(eq("tr 1 (h)", "f"));
    CHECK_FALSE(eq("f * id 1", "id 1 * f"));
    CHECK_THROWS_AS(eq("f", "g"), TypeError);
  }

  TEST_CASE("labelled equations") {
    Signature sig = sample_labelled_signature();
    auto eq = [&](const char* a, const char* b) {
      return equal_mod_stmc(parse_term(a, sig), parse_term(b, sig), sig);
    };
    CHECK(eq("tr [A] (swap [A] [A])", "id [A]"));
    CHECK(eq("(f * g) ; swap [B] [A]", "swap [A] [B] ; (g * f)"));
    CHECK_FALSE(eq("f ; g", "f ; g ; f ; g"));
    CHECK(eq("delA ; newA", "delA ; newA"));
    CHECK_FALSE(eq("delA ; newA", "id [A]"));
  }

  TEST_CASE("every scheme of the axiom suite holds on a few instances") {
    auto results = run_axiom_suite(sample_prop_signature(), 123, 10);
    CHECK(results.size() == stmc_axiom_schemes().size());
    for (const auto& r : results) {
      INFO(r.scheme);
      CHECK(r.passed());
      CHECK(r.graphs_checked > 0);
    }
  }

  TEST_CASE("the axiom suite also holds over labelled objects") {
    for (const auto& r : run_axiom_suite(sample_labelled_signature(), 7, 10)) {
      INFO(r.scheme);
      CHECK(r.passed());
    }
  }
}
