#include <doctest.h>

#include <random>

#include "lhg/circuits.hpp"
#include "lhg/error.hpp"
#include "lhg/interp.hpp"
#include "lhg/ops.hpp"
#include "oracles.hpp"

using namespace lhg;

namespace {

using Strings = std::vector<std::string>;

Evaluation run(const CircuitSignature& sig, const char* term, Strings inputs, std::size_t budget = 10000) {
  EvaluationOptions options;
  options.max_steps = budget;
  return evaluate(parse_term(term, sig.signature()), inputs, sig, options);
}

const char* kChain =
    "values: lo, mid, hi\n"
    "bottom: lo\n"
    "join: lo mid -> mid\n"
    "join: lo hi -> hi\n"
    "join: mid hi -> hi\n"
    "gate up arity 1: lo -> mid; mid -> hi; hi -> hi\n";

}  // namespace

TEST_SUITE("circuits") {
  TEST_CASE("lattice laws are enforced") {
    using Table = std::map<std::pair<std::string, std::string>, std::string>;
    Table ok = {{{"a", "a"}, "a"}, {{"a", "b"}, "b"}, {{"b", "a"}, "b"}, {{"b", "b"}, "b"}};
    ValueLattice two({"a", "b"}, "a", ok);
    CHECK(two.height() == 1);
    CHECK(two.leq("a", "b"));
    CHECK_FALSE(two.leq("b", "a"));
    Table partial = ok;
    partial.erase({"b", "a"});
    CHECK_THROWS_AS(ValueLattice({"a", "b"}, "a", partial), Error);
    Table lopsided = ok;
    lopsided[{"a", "b"}] = "a";
    CHECK_THROWS_AS(ValueLattice({"a", "b"}, "a", lopsided), Error);
    CHECK_THROWS_AS(ValueLattice({"a", "b"}, "b", ok), Error);
  }

  TEST_CASE("built-in lattices") {
    auto two = two_point_circuits();
    CHECK(two.lattice().values().size() == 2);
    CHECK(two.lattice().height() == 1);
    auto four = belnap_circuits();
    CHECK(four.lattice().values().size() == 4);
    CHECK(four.lattice().height() == 2);
    CHECK(four.lattice().join("false", "true") == "top");
    const Gate* and_gate = four.find_gate("and");
    REQUIRE(and_gate);
    CHECK(four.apply(*and_gate, {"false", "bot"}) == "false");
    CHECK(four.apply(*and_gate, {"true", "bot"}) == "bot");
    CHECK(four.apply(*four.find_gate("not"), {"top"}) == "top");
    CHECK(four.signature().find("delay")->dom == nat(1));
  }

  TEST_CASE("non-monotone gates are rejected") {
    auto lattice = two_point_circuits().lattice();
    Gate flip{"flip", 1, {{{"bot"}, "top"}, {{"top"}, "bot"}}};
    CHECK_THROWS_AS(CircuitSignature(lattice, {flip}), Error);
    Gate partial{"half", 1, {{{"bot"}, "bot"}}};
    CHECK_THROWS_AS(CircuitSignature(lattice, {partial}), Error);
    Gate clash{"fork", 1, {{{"bot"}, "bot"}, {{"top"}, "top"}}};
    CHECK_THROWS_AS(CircuitSignature(lattice, {clash}), Error);
  }

  TEST_CASE("lattice files") {
    auto sig = parse_circuit_signature(kChain);
    CHECK(sig.lattice().height() == 2);
    CHECK(sig.lattice().join("mid", "lo") == "mid");
    CHECK(sig.apply(*sig.find_gate("up"), {"lo"}) == "mid");
    CHECK_THROWS_AS(parse_circuit_signature("values: a, b\nbottom: c\n"), Error);
    CHECK_THROWS_AS(parse_circuit_signature("values a b\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit_signature(std::string(kChain) + "gate down arity 1: lo -> hi; mid -> lo; hi -> lo\n"),
                    Error);
    try {
      parse_circuit_signature("values: a, b\nbottom: a\njoin: a b c\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }

  TEST_CASE("feedforward evaluation") {
    auto two = two_point_circuits();
    auto r = run(two, "fork ; and", {"top"});
    CHECK(r.outcome == Outcome::Values);
    CHECK(r.outputs == Strings{"top"});
    CHECK(run(two, "(fork * id 1) ; (id 1 * or)", {"top", "bot"}).outputs == Strings{"top", "top"});
    CHECK(run(two, "id 2", {"bot", "top"}).outputs == Strings{"bot", "top"});
    CHECK(run(two, "stub * id 1", {"top", "bot"}).outputs == Strings{"bot"});
  }

  TEST_CASE("feedback loops settle at the least fixed point") {
    auto two = two_point_circuits();
    CHECK(run(two, "tr 1 (or ; fork)", {"top"}).outputs == Strings{"top"});
    CHECK(run(two, "tr 1 (or ; fork)", {"bot"}).outputs == Strings{"bot"});
    CHECK(run(two, "tr 1 (and ; fork)", {"top"}).outputs == Strings{"bot"});
    auto four = belnap_circuits();
    CHECK(run(four, "tr 1 ((id 1 * not) ; or ; fork)", {"false"}).outputs == Strings{"true"});
    CHECK(run(four, "tr 1 ((id 1 * not) ; or ; fork)", {"true"}).outputs == Strings{"bot"});
  }

  TEST_CASE("delays") {
    auto two = two_point_circuits();
    auto idle = run(two, "delay", {"bot"});
    CHECK(idle.outcome == Outcome::Values);
    CHECK(idle.outputs == Strings{"bot"});
    CHECK(run(two, "delay", {"top"}).outcome == Outcome::NonValue);
    auto dropped = run(two, "delay ; stub", {"top"});
    CHECK(dropped.outcome == Outcome::Values);
    CHECK(dropped.outputs.empty());
    CHECK(run(two, "tr 1 (or ; delay ; fork)", {"top"}, 300).outcome == Outcome::Unproductive);
    auto collected = run(two, "tr 1 (or ; delay ; fork) ; stub", {"top"}, 300);
    CHECK(collected.outcome == Outcome::Values);
    CHECK(collected.outputs.empty());
  }

  TEST_CASE("streaming rules agree on silent inputs") {
    for (const auto& sig : {two_point_circuits(), belnap_circuits()}) {
      CircuitEvaluator ev(sig);
      std::size_t seen = 0;
      for (const auto& rule : circuit_rules(sig)) {
        if (rule.name.rfind("stream-", 0) != 0) continue;
        ++seen;
        Strings silent(rule.lhs.dom().size(), sig.lattice().bottom());
        auto a = ev.run(rule.lhs, silent);
        auto b = ev.run(rule.rhs, silent);
        INFO(rule.name);
        CHECK(a.outcome == Outcome::Values);
        CHECK(b.outcome == Outcome::Values);
        CHECK(a.outputs == b.outputs);
      }
      CHECK(seen > 0);
    }
  }

  TEST_CASE("streaming rules agree on every input tuple") {
    for (const auto& sig : {two_point_circuits(), belnap_circuits()}) {
      std::vector<PreparedRule> rules;
      for (const auto& r : circuit_rules(sig)) rules.push_back(prepare_rule(r));
      for (const auto& r : cartesian_evaluation_rules(sig)) rules.push_back(prepare_rule(r));
      RewritePolicy policy;
      policy.max_steps = 200;
      const auto& values = sig.lattice().values();
      for (const auto& rule : circuit_rules(sig)) {
        if (rule.name.rfind("stream-", 0) != 0) continue;
        std::size_t m = rule.lhs.dom().size();
        std::vector<std::size_t> pick(m, 0);
        while (true) {
          LinearHypergraph feed = empty_graph();
          for (std::size_t i : pick) feed = tensor(feed, generator(values[i], sig.signature()));
          auto a = normalize(compose(feed, rule.lhs), rules, policy);
          auto b = normalize(compose(feed, rule.rhs), rules, policy);
          INFO(rule.name);
          CHECK_FALSE(a.budget_exhausted);
          CHECK_FALSE(b.budget_exhausted);
          CHECK(isomorphic(a.graph, b.graph));
          std::size_t k = 0;
          while (k < m && ++pick[k] == values.size()) pick[k++] = 0;
          if (k == m) break;
        }
      }
    }
  }

  TEST_CASE("input checking") {
    auto two = two_point_circuits();
    CHECK_THROWS_AS(run(two, "and", {"top"}), TypeError);
    CHECK_THROWS_AS(run(two, "fork", {"maybe"}), TypeError);
  }

  TEST_CASE("regions, components and dead edges") {
    auto two = two_point_circuits();
    auto g = interpret(parse_term("tr 1 (or ; fork) ; fork ; (stub * id 1)", two.signature()), two.signature());
    auto comps = feedback_components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 2);
    auto region = region_of(g, comps[0]);
    CHECK(region.internal.size() == 2);
    CHECK(region.graph.dom().size() == 1);
    CHECK(region.graph.cod().size() == 1);
    CHECK(dead_edges(g).size() == 1);
  }

  TEST_CASE("evaluation matches the netlist oracle on small loop-free circuits") {
    auto sig = two_point_circuits();
    CircuitEvaluator ev(sig);
    for (const auto& net : oracle::enumerate_loop_free(sig, 2, 2)) {
      auto g = oracle::netlist_graph(net);
      for (const auto& a : sig.lattice().values()) {
        for (const auto& b : sig.lattice().values()) {
          auto want = oracle::direct_evaluate(net, {a, b}, sig);
          auto got = ev.run(g, {a, b});
          CHECK(got.outcome == want.outcome);
          CHECK(got.outputs == want.values);
        }
      }
    }
  }

  TEST_CASE("the log names each evaluation step") {
    auto two = two_point_circuits();
    auto r = run(two, "tr 1 (or ; fork)", {"top"});
    bool closure = false;
    for (const auto& s : r.log) closure = closure || s.rule == "closure";
    CHECK(closure);
    CHECK(to_string(Outcome::Values) == "VALUES");
    CHECK(to_string(Outcome::Unproductive) == "UNPRODUCTIVE");
    CHECK(to_string(Outcome::NonValue) == "NON-VALUE");
  }
}
