#include <doctest.h>

#include <random>

#include "lhg/interp.hpp"
#include "lhg/ops.hpp"
#include "lhg/random.hpp"
#include "oracles.hpp"

using namespace lhg;

TEST_SUITE("oracles") {
  TEST_CASE("enumerated graphs are valid and counted as expected") {
    Signature sig = parse_signature("a : 1 -> 1\nb : 1 -> 2\n");
    auto graphs = oracle::enumerate_graphs(sig, 4, 1);
    // No edges: 0, 1 or 2 wires, each wiring counted. One a: 0 or 1 extra
    // wire. One b: 1 wire through b plus 0 extra inputs (T = 2).
    std::size_t expected = (1 + 1 + 2) + (1 + 2) + 2;
    CHECK(graphs.size() == expected);
    for (const auto& g : graphs) CHECK(validate(g, sig).ok());
  }

  TEST_CASE("brute-force isomorphism separates wirings") {
    Signature sig = parse_signature("a : 1 -> 1\n");
    auto loop = interpret(parse_term("tr 1 (a)", sig), sig);
    auto line = interpret(parse_term("a", sig), sig);
    auto both = interpret(parse_term("a * a", sig), sig);
    auto twisted = interpret(parse_term("swap 1 1 ; (a * a)", sig), sig);
    CHECK(oracle::brute_force_isomorphic(both, freshen(both)));
    CHECK_FALSE(oracle::brute_force_isomorphic(both, twisted));
    CHECK_FALSE(oracle::brute_force_isomorphic(loop, line));
  }

  TEST_CASE("scramble keeps the graph up to isomorphism") {
    std::mt19937_64 rng(3);
    Signature sig = sample_prop_signature();
    for (int i = 0; i < 20; ++i) {
      auto g = random_graph(sig, rng, {3, 8, 0});
      auto s = oracle::scramble(g, rng);
      CHECK(validate(s, sig).ok());
      CHECK(oracle::brute_force_isomorphic(g, s));
    }
  }

  TEST_CASE("bulk trace agrees with the trace constructor") {
    Signature sig = sample_prop_signature();
    TermGenerator gen(sig, 11);
    for (int i = 0; i < 30; ++i) {
      Word x = nat(1 + gen.below(2));
      Term body = gen.between(concat(x, nat(1)), concat(x, nat(1)), 2);
      auto f = interpret(body, sig);
      CHECK(isomorphic(oracle::bulk_trace(x.size(), f), trace(x, f)));
    }
  }

  TEST_CASE("direct evaluation of small netlists") {
    auto sig = two_point_circuits();
    // w0 -> or(w0', w2) -> fork -> (w3 out, w2 back)
    oracle::Netlist loop;
    loop.wires = 4;
    loop.inputs = {0};
    loop.outputs = {3};
    loop.nodes = {{"or", {0, 2}, {1}}, {"fork", {1}, {3, 2}}};
    CHECK(oracle::direct_evaluate(loop, {"top"}, sig).values == std::vector<std::string>{"top"});
    CHECK(oracle::direct_evaluate(loop, {"bot"}, sig).values == std::vector<std::string>{"bot"});
    loop.nodes.push_back({"delay", {2}, {4}});
    loop.nodes[0].in = {0, 4};
    loop.wires = 5;
    CHECK(oracle::direct_evaluate(loop, {"top"}, sig).outcome == Outcome::Unproductive);
  }
}
