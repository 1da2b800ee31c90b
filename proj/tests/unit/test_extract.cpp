#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "lhg/error.hpp"
#include "lhg/extract.hpp"
#include "lhg/interp.hpp"
#include "lhg/ops.hpp"
#include "lhg/random.hpp"

using namespace lhg;

namespace {

bool only_structure(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Id:
    case Term::Kind::Swap:
      return true;
    case Term::Kind::Seq:
    case Term::Kind::Tensor:
      return only_structure(t.left()) && only_structure(t.right());
    default:
      return false;
  }
}

}  // namespace

TEST_SUITE("extract") {
  TEST_CASE("untangling puts inputs first and groups ports by edge") {
    std::mt19937_64 rng(31);
    Signature sig = sample_prop_signature();
    for (int i = 0; i < 50; ++i) {
      auto g = random_graph(sig, rng);
      EdgeOrder ord = g.edges;
      std::shuffle(ord.begin(), ord.end(), rng);
      auto u = untangle(g, ord);
      CHECK(validate(u, sig).ok());
      CHECK(isomorphic(u, g));
      CHECK(u.edges == ord);
      std::size_t k = 0;
      for (VertexId t : g.inputs()) CHECK(u.targets[k++] == t);
      for (EdgeId e : ord) {
        for (VertexId t : g.edge_targets(e)) CHECK(u.targets[k++] == t);
      }
      k = 0;
      for (EdgeId e : ord) {
        for (VertexId s : g.edge_sources(e)) CHECK(u.sources[k++] == s);
      }
      for (VertexId s : g.outputs()) CHECK(u.sources[k++] == s);
    }
  }

  TEST_CASE("orders that are not permutations are rejected") {
    Signature sig = sample_prop_signature();
    auto g = interpret(parse_term("f ; f", sig), sig);
    CHECK_THROWS_AS(untangle(g, {g.edges[0]}), Error);
    CHECK_THROWS_AS(untangle(g, {g.edges[0], g.edges[0]}), Error);
  }

  TEST_CASE("stack and shuffle") {
    Signature sig = sample_prop_signature();
    auto g = interpret(parse_term("tr 1 (h ; (f * id 1)) ; g ; k", sig), sig);
    EdgeOrder ord = g.edges;
    Term st = stack(g, ord);
    CHECK(type_of(st, sig).dom.size() == 6);
    CHECK(type_of(st, sig).cod.size() == 6);
    Term sh = shuffle(untangle(g, ord));
    CHECK(only_structure(sh));
  }

  TEST_CASE("extraction round-trips random terms") {
    Signature sig = sample_prop_signature();
    TermGenerator gen(sig, 51);
    for (int i = 0; i < 100; ++i) {
      auto h = interpret(gen.any(5), sig);
      Term t = extract_term(h);
      CHECK(isomorphic(interpret(t, sig), h));
      CHECK(isomorphic(interpret(simplify(t), sig), h));
    }
  }

  TEST_CASE("identity edges extract as identities") {
    Signature sig = sample_prop_signature();
    auto h = interpret(parse_term("f ; g", sig), sig);
    auto e = expand(h, h.inputs()[0]);
    Term t = extract_term(e);
    CHECK(isomorphic(interpret(t, sig), h));
  }

  TEST_CASE("every edge order gives an equal term") {
    Signature sig = sample_prop_signature();
    auto h = interpret(parse_term("tr 1 (h ; (f * id 1)) ; g ; (d * c * id 1) ; k", sig), sig);
    EdgeOrder ord = h.edges;
    std::sort(ord.begin(), ord.end());
    Term first = extract_term(h, ord);
    std::size_t orders = 0;
    do {
      CHECK(equal_mod_stmc(first, extract_term(h, ord), sig));
      ++orders;
    } while (std::next_permutation(ord.begin(), ord.end()));
    CHECK(orders == 720);
    CHECK(check_coherence(h, 720));
  }

  TEST_CASE("signature inference") {
    Signature sig = sample_prop_signature();
    auto h = interpret(parse_term("g ; k ; f", sig), sig);
    Signature inferred = infer_signature(h);
    CHECK(inferred.generators().size() == 3);
    CHECK(inferred.find("g")->cod == nat(2));
    LinearHypergraph clash = tensor(generator("f", sig), generator("f", GeneratorType{nat(2), nat(1)}));
    CHECK_THROWS_AS(infer_signature(clash), Error);
  }
}
