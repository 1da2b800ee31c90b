#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "lhg/error.hpp"
#include "lhg/extract.hpp"
#include "lhg/interp.hpp"
#include "lhg/ops.hpp"
#include "lhg/random.hpp"
#include "lhg/rewrite.hpp"
#include "oracles.hpp"

using namespace lhg;

namespace {

Signature copy_sig() { return parse_signature("join : 2 -> 1\nf : 1 -> 1\ncopy : 1 -> 2\n"); }

using Flat = std::vector<std::uint64_t>;

// A homomorphism as a flat sorted list, for comparing sets of them.
Flat flatten(const Homomorphism& h) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (const auto& [a, b] : h.targets) pairs.push_back({a.value, b.value});
  for (const auto& [a, b] : h.sources) pairs.push_back({a.value, b.value});
  for (const auto& [a, b] : h.edges) pairs.push_back({a.value, b.value});
  std::sort(pairs.begin(), pairs.end());
  Flat out;
  for (auto [a, b] : pairs) {
    out.push_back(a);
    out.push_back(b);
  }
  return out;
}

std::set<Flat> flatten_all(const std::vector<Homomorphism>& hs) {
  std::set<Flat> out;
  for (const auto& h : hs) out.insert(flatten(h));
  return out;
}

struct Span {
  LinearHypergraph k, c, r;
  Homomorphism m, n;
};

// K is one wire; it is glued to the output side of f in c and to the input
// side of f in r when `coherent`, and to the output side in both otherwise.
Span one_wire_span(bool coherent) {
  Signature sig = copy_sig();
  Span s;
  s.k = identity(nat(1));
  VertexId kt = s.k.targets[0], ks = s.k.sources[0];
  s.c = generator("f", sig);
  s.r = freshen(generator("f", sig));
  EdgeId ec = s.c.edges[0], er = s.r.edges[0];
  s.m.targets[kt] = s.c.edge_targets(ec)[0];
  s.m.sources[ks] = s.c.outputs()[0];
  if (coherent) {
    s.n.targets[kt] = s.r.inputs()[0];
    s.n.sources[ks] = s.r.edge_sources(er)[0];
  } else {
    s.n.targets[kt] = s.r.edge_targets(er)[0];
    s.n.sources[ks] = s.r.outputs()[0];
  }
  return s;
}

}  // namespace

TEST_SUITE("rewrite") {
  TEST_CASE("copy naturality through a feedback loop") {
    Signature sig = copy_sig();
    auto rules = parse_rules("copy_nat : f ; copy => copy ; (f * f)\n", sig);
    auto host = interpret(parse_term("tr 1 ((join * f) ; swap 1 1 ; (copy * id 1))", sig), sig);
    auto expected = interpret(parse_term("tr 1 ((join * (copy ; (f * f))) ; swap 1 2)", sig), sig);

    auto matches = find_matchings(rules[0].lhs, host);
    REQUIRE(matches.size() == 1);
    auto direct = apply_rewrite(host, rules[0], matches[0]);
    CHECK(validate(direct, sig).ok());
    CHECK(isomorphic(direct, expected));

    auto complement = pushout_complement(rules[0].interface, rules[0].lhs, rules[0].left_leg, host, matches[0]);
    CHECK(validate(complement.context).ok());
    CHECK(complement.context.edges.size() == 1);
    CHECK(is_embedding(complement.context_to_host, complement.context, host));
    auto po = pushout(rules[0].interface, complement.context, complement.interface_to_context, rules[0].rhs,
                      rules[0].right_leg);
    CHECK(isomorphic(smooth(po.graph), expected));

    auto driven = normalize(host, rules);
    CHECK(driven.steps == 1);
    CHECK(isomorphic(driven.graph, expected));
  }

  TEST_CASE("rules built from terms carry an edge-free interface") {
    Signature sig = copy_sig();
    RewriteRule r = rule_from_terms("n", parse_term("f ; copy", sig), parse_term("copy ; (f * f)", sig), sig);
    CHECK(r.interface.edges.empty());
    CHECK(r.interface.targets.size() == 3);
    CHECK(legs_are_embeddings(r));
    CHECK(is_homomorphism(r.left_leg, r.interface, r.lhs));
    CHECK(is_homomorphism(r.right_leg, r.interface, r.rhs));
    CHECK_THROWS_AS(rule_from_terms("bad", parse_term("f", sig), parse_term("copy", sig), sig), TypeError);
  }

  TEST_CASE("saturation puts identity edges on bare wires") {
    Signature sig = copy_sig();
    RewriteRule r = rule_from_terms("intro", parse_term("id 1", sig), parse_term("f", sig), sig);
    CHECK(legs_are_embeddings(r));
    CHECK(r.lhs.edges.size() == 1);
    CHECK(r.lhs.is_identity_edge(r.lhs.edges[0]));
    CHECK(saturate_rule(r).lhs.edges.size() == 1);
  }

  TEST_CASE("matchings agree with brute-force embeddings") {
    Signature sig = parse_signature("a : 1 -> 1\nb : 1 -> 2\n");
    std::vector<LinearHypergraph> patterns;
    for (const char* p : {"a", "b", "a ; a", "a ; b", "b ; (a * id 1)", "tr 1 (b)"}) {
      patterns.push_back(interpret(parse_term(p, sig), sig));
    }
    std::size_t compared = 0, found = 0;
    for (const auto& g : oracle::enumerate_graphs(sig, 8, 3)) {
      for (const auto& l : patterns) {
        if (l.edges.size() > g.edges.size()) continue;
        auto lib = find_matchings(l, g);
        for (const auto& m : lib) CHECK(is_embedding(m, l, g));
        CHECK(flatten_all(lib) == flatten_all(oracle::brute_force_embeddings(l, g)));
        ++compared;
        found += lib.size();
      }
    }
    CHECK(compared > 500);
    CHECK(found > 100);
  }

  TEST_CASE("a doubled pattern matches a doubled host twice") {
    Signature sig = copy_sig();
    auto l = interpret(parse_term("f * f", sig), sig);
    auto g = interpret(parse_term("f * f", sig), sig);
    CHECK(find_matchings(l, g).size() == 2);
    auto chain = interpret(parse_term("f ; f", sig), sig);
    CHECK(find_matchings(l, chain).empty());  // the middle wire would be hit twice
    CHECK(find_matchings(chain, g).empty());
  }

  TEST_CASE("matching follows wires through identity edges and loops") {
    Signature sig = copy_sig();
    auto rules = parse_rules("copy_nat : f ; copy => copy ; (f * f)\n", sig);
    auto host = interpret(parse_term("tr 1 (f ; copy)", sig), sig);
    CHECK(find_matchings(rules[0].lhs, host).empty());
    auto prepared = prepare_rule(rules[0]);
    auto redexes = find_redexes(prepared, host);
    REQUIRE(redexes.size() == 1);
    auto out = apply_redex(host, prepared, redexes[0]);
    CHECK(isomorphic(out, interpret(parse_term("tr 1 (copy ; (f * f))", sig), sig)));
    auto expanded = expand(expand(host, host.targets[0]), host.targets[1]);
    RewritePolicy once;
    once.max_steps = 1;
    auto through = normalize(expanded, rules, once);
    CHECK(through.steps == 1);
    CHECK(isomorphic(through.graph, interpret(parse_term("tr 1 (copy ; (f * f))", sig), sig)));
  }

  TEST_CASE("complements agree with the exhaustive oracle") {
    Signature sig = parse_signature("a : 1 -> 1\nb : 1 -> 2\n");
    std::vector<RewriteRule> rules = {
        rule_from_terms("a", parse_term("a", sig), parse_term("a ; a", sig), sig),
        rule_from_terms("ab", parse_term("a ; b", sig), parse_term("b", sig), sig),
        rule_from_terms("loop", parse_term("tr 1 (b)", sig), parse_term("tr 1 (b) ; a", sig), sig),
    };
    std::size_t checked = 0;
    for (const auto& g : oracle::enumerate_graphs(sig, 6, 3)) {
      for (const auto& rule : rules) {
        for (const auto& m : find_matchings(rule.lhs, g)) {
          auto lib = pushout_complement(rule.interface, rule.lhs, rule.left_leg, g, m);
          auto all = oracle::brute_force_complements(rule.interface, rule.lhs, rule.left_leg, g, m);
          REQUIRE(all.size() == 1);
          CHECK(lib.context == all[0]);
          ++checked;
        }
      }
    }
    CHECK(checked > 20);
  }

  TEST_CASE("pushouts of coherent spans are linear") {
    Span s = one_wire_span(true);
    CHECK(boundary_coherent(s.k, s.m, s.c, s.n, s.r));
    auto po = pushout(s.k, s.c, s.m, s.r, s.n);
    CHECK(validate(po.graph).ok());
    CHECK(isomorphic(po.graph, interpret(parse_term("f ; f", copy_sig()), copy_sig())));
    CHECK(is_homomorphism(po.from_left, s.c, po.graph));
    CHECK(is_homomorphism(po.from_right, s.r, po.graph));
    auto simple = simple_pushout(to_simple(s.k), to_simple(s.c), to_simple(s.m), to_simple(s.r), to_simple(s.n));
    CHECK(is_linear(simple));
  }

  TEST_CASE("pushouts of incoherent spans are not linear") {
    Span s = one_wire_span(false);
    CHECK_FALSE(boundary_coherent(s.k, s.m, s.c, s.n, s.r));
    CHECK_THROWS_AS(pushout(s.k, s.c, s.m, s.r, s.n), RewriteError);
    auto simple = simple_pushout(to_simple(s.k), to_simple(s.c), to_simple(s.m), to_simple(s.r), to_simple(s.n));
    CHECK_FALSE(is_linear(simple));
  }

  TEST_CASE("an empty rule set leaves the graph alone") {
    Signature sig = copy_sig();
    auto host = interpret(parse_term("f ; copy", sig), sig);
    auto out = normalize(host, std::vector<RewriteRule>{});
    CHECK(out.steps == 0);
    CHECK(out.log.empty());
    CHECK_FALSE(out.budget_exhausted);
    CHECK(isomorphic(out.graph, host));
  }

  TEST_CASE("the step budget bounds the log") {
    Signature sig = copy_sig();
    auto rules = parse_rules("grow : f => f ; f\n", sig);
    auto host = interpret(parse_term("f", sig), sig);
    RewritePolicy policy;
    policy.max_steps = 1;
    auto out = normalize(host, rules, policy);
    CHECK(out.steps == 1);
    CHECK(out.log.size() == 1);
    CHECK(out.budget_exhausted);
    CHECK(out.graph.edges.size() == 2);
    CHECK(out.log[0].to_string().rfind("step 1: rule grow at edges [", 0) == 0);
    policy.max_steps = 5;
    CHECK(normalize(host, rules, policy).graph.edges.size() == 6);
  }

  TEST_CASE("exhaustive search finds a single normal form of a confluent system") {
    Signature sig = copy_sig();
    auto rules = parse_rules("idem : f ; f => f\nsplit : copy ; (f * f) => f ; copy\n", sig);
    auto host = interpret(parse_term("f ; f ; copy ; (f * f)", sig), sig);
    RewritePolicy policy;
    policy.strategy = Strategy::Exhaustive;
    auto out = normalize(host, rules, policy);
    CHECK_FALSE(out.budget_exhausted);
    REQUIRE(out.normal_forms.size() == 1);
    CHECK(isomorphic(out.normal_forms[0], interpret(parse_term("f ; copy", sig), sig)));
    CHECK(isomorphic(normalize(host, rules).graph, out.normal_forms[0]));
  }

  TEST_CASE("exhaustive search reports distinct normal forms") {
    Signature sig = copy_sig();
    auto rules = parse_rules("keep : f ; f => f\ndrop : f ; f => id 1\n", sig);
    auto host = interpret(parse_term("f ; f", sig), sig);
    RewritePolicy policy;
    policy.strategy = Strategy::Exhaustive;
    auto out = normalize(host, rules, policy);
    CHECK_FALSE(out.budget_exhausted);
    CHECK(out.normal_forms.size() == 2);
  }

  TEST_CASE("rule files") {
    Signature sig = copy_sig();
    auto rules = parse_rules("# comment\n\nnat : f ; copy => copy ; (f * f)  # trailing\nyank : tr 1 (swap 1 1) => id 1\n", sig);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].name == "nat");
    CHECK(rules[1].name == "yank");
    try {
      parse_rules("ok : f => f\nbad : f ; => f\n", sig);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_rules("no arrow here\n", sig), ParseError);
    CHECK_THROWS_AS(parse_rules("t : f => copy\n", sig), TypeError);
  }

  TEST_CASE("random rewrites keep graphs valid") {
    Signature sig = sample_prop_signature();
    auto rules = parse_rules(
        "a : f ; f => f\n"
        "b : g ; k => f\n"
        "c : c ; d => id 0\n"
        "e : h ; h => id 2\n",
        sig);
    TermGenerator gen(sig, 99);
    for (int i = 0; i < 60; ++i) {
      auto host = interpret(gen.any(4), sig);
      RewritePolicy policy;
      policy.max_steps = 30;
      auto out = normalize(host, rules, policy);
      CHECK(validate(out.graph, sig).ok());
      CHECK(out.graph.dom() == host.dom());
      CHECK(out.graph.cod() == host.cod());
      CHECK(out.graph.edges.size() <= host.edges.size());
    }
  }
}
