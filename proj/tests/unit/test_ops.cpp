#include <doctest.h>

#include "lhg/error.hpp"
#include "lhg/interp.hpp"
#include "lhg/ops.hpp"
#include "lhg/random.hpp"
#include "oracles.hpp"

using namespace lhg;

TEST_SUITE("ops") {
  TEST_CASE("identity and generator shapes") {
    Signature sig = sample_prop_signature();
    auto id3 = identity(nat(3));
    CHECK(validate(id3).ok());
    CHECK(id3.edges.empty());
    CHECK(id3.dom() == nat(3));
    auto h = generator("h", sig);
    CHECK(validate(h, sig).ok());
    CHECK(h.edges.size() == 1);
    CHECK(h.inputs().size() == 2);
    CHECK(h.outputs().size() == 2);
    CHECK_THROWS_AS(generator("nope", sig), TypeError);
    CHECK(empty_graph().vertex_count() == 0);
  }

  TEST_CASE("block swap equals the recursive construction") {
    for (std::size_t m = 0; m <= 3; ++m) {
      for (std::size_t n = 0; n <= 3; ++n) {
        auto direct = lhg::swap(nat(m), nat(n));
        auto recursive = swap_recursive(nat(m), nat(n));
        CHECK(validate(recursive).ok());
        CHECK(isomorphic(direct, recursive));
      }
    }
    Word a{"A", "B"}, b{"C"};
    CHECK(isomorphic(lhg::swap(a, b), swap_recursive(a, b)));
    CHECK(lhg::swap(a, b).dom() == Word{"A", "B", "C"});
    CHECK(lhg::swap(a, b).cod() == Word{"C", "A", "B"});
  }

  TEST_CASE("swap wires the first block to the last outputs") {
    auto s = lhg::swap(nat(1), nat(2));
    auto in = s.inputs();
    auto out = s.outputs();
    CHECK(s.conn.at(in[0]) == out[2]);
    CHECK(s.conn.at(in[1]) == out[0]);
    CHECK(s.conn.at(in[2]) == out[1]);
  }

  TEST_CASE("composition and tensor check types") {
    Signature sig = sample_prop_signature();
    auto g = generator("g", sig);
    auto k = generator("k", sig);
    auto f = generator("f", sig);
    CHECK(compose(g, k).dom() == nat(1));
    CHECK(compose(g, k).cod() == nat(1));
    CHECK_THROWS_AS(compose(g, f), TypeError);
    CHECK(tensor(g, f).dom() == nat(2));
    CHECK(tensor(g, f).cod() == nat(3));
    Signature lab = sample_labelled_signature();
    CHECK_THROWS_AS(compose(generator("f", lab), generator("f", lab)), TypeError);
    CHECK_THROWS_AS(trace(nat(2), generator("f", sig)), TypeError);
    CHECK(trace(nat(1), generator("g", sig)).cod() == nat(1));
  }

  TEST_CASE("composing with a graph sharing atoms freshens it") {
    Signature sig = sample_prop_signature();
    auto f = generator("f", sig);
    auto ff = compose(f, f);
    CHECK(validate(ff).ok());
    CHECK(ff.edges.size() == 2);
    CHECK(isomorphic(ff, interpret(parse_term("f ; f", sig), sig)));
  }

  TEST_CASE("unit and associativity laws") {
    Signature sig = sample_prop_signature();
    TermGenerator gen(sig, 44);
    for (int i = 0; i < 30; ++i) {
      auto a = interpret(gen.any(3), sig);
      auto b = interpret(gen.from(a.cod(), 3), sig);
      auto c = interpret(gen.from(b.cod(), 3), sig);
      CHECK(isomorphic(compose(identity(a.dom()), a), a));
      CHECK(isomorphic(compose(a, identity(a.cod())), a));
      CHECK(isomorphic(compose(compose(a, b), c), compose(a, compose(b, c))));
      CHECK(isomorphic(tensor(tensor(a, b), c), tensor(a, tensor(b, c))));
      CHECK(isomorphic(tensor(empty_graph(), a), a));
    }
  }

  TEST_CASE("trace agrees with the bulk feedback oracle") {
    Signature sig = sample_prop_signature();
    TermGenerator gen(sig, 45);
    for (int i = 0; i < 40; ++i) {
      std::size_t x = gen.below(3);
      Term body = gen.between(nat(x + 1), nat(x + gen.below(3)), 3);
      auto f = interpret(body, sig);
      auto t = trace(nat(x), f);
      CHECK(validate(t, sig).ok());
      auto expected = oracle::bulk_trace(x, f);
      CHECK(isomorphic(t, expected));
      if (t.vertex_count() <= 8) CHECK(oracle::brute_force_isomorphic(t, expected));
    }
  }

  TEST_CASE("tracing through identity edges embeds the body") {
    Signature sig = sample_prop_signature();
    auto f = interpret(parse_term("h", sig), sig);
    auto [t, emb] = trace_mono(nat(1), f);
    CHECK(validate(t).ok());
    CHECK(is_embedding(emb, f, t));
    CHECK(isomorphic(smooth(t), trace(nat(1), f)));
    auto yank = trace(nat(1), lhg::swap(nat(1), nat(1)));
    CHECK(isomorphic(yank, identity(nat(1))));
  }
}
