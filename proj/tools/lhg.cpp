#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lhg/axioms.hpp"
#include "lhg/circuits.hpp"
#include "lhg/error.hpp"
#include "lhg/extract.hpp"
#include "lhg/interp.hpp"
#include "lhg/io.hpp"
#include "lhg/random.hpp"
#include "lhg/rewrite.hpp"

namespace {

enum Exit { kOk = 0, kNotIsomorphic = 1, kParse = 2, kType = 3, kBudget = 4, kFailure = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

bool looks_like_json(const std::string& text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

lhg::CircuitSignature load_circuit_signature(const std::string& name) {
  if (name.empty() || name == "two-point") return lhg::two_point_circuits();
  if (name == "belnap") return lhg::belnap_circuits();
  return lhg::parse_circuit_signature(read_text(name));
}

struct Options {
  std::string sig;
  std::string rules;
  std::string order;
  std::size_t steps = 10000;
  std::string strategy = "deterministic";
  std::string dot;
  std::uint64_t seed = 1;
  std::string input;
  std::string second;
  std::vector<std::string> inputs;
  std::size_t instances = 200;
};

int cmd_interpret(const Options& o) {
  lhg::Signature sig = lhg::parse_signature(read_text(o.sig));
  lhg::LinearHypergraph h = lhg::interpret(lhg::parse_term(read_text(o.input), sig), sig);
  std::cout << lhg::save_graph(h);
  if (!o.dot.empty()) write_text(o.dot, lhg::to_dot(lhg::canonical(h)));
  return kOk;
}

int cmd_extract(const Options& o) {
  lhg::LinearHypergraph h = lhg::load_graph(read_text(o.input));
  lhg::Term t;
  if (o.order.empty()) {
    t = lhg::extract_term(h);
  } else {
    lhg::EdgeOrder ord;
    for (const auto& id : split(o.order, ',')) ord.push_back(lhg::EdgeId{std::stoull(id)});
    t = lhg::extract_term(h, ord);
  }
  std::cout << lhg::render_term(lhg::simplify(t)) << "\n";
  return kOk;
}

int cmd_iso(const Options& o) {
  lhg::LinearHypergraph a = lhg::load_graph(read_text(o.input));
  lhg::LinearHypergraph b = lhg::load_graph(read_text(o.second));
  auto witness = lhg::find_isomorphism(a, b);
  if (!witness) {
    std::cout << "not isomorphic\n";
    return kNotIsomorphic;
  }
  nlohmann::json j;
  auto dump = [](const auto& map, const auto& order) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : order) out.push_back({x.value, map.at(x).value});
    return out;
  };
  j["targets"] = dump(witness->targets, a.targets);
  j["sources"] = dump(witness->sources, a.sources);
  j["edges"] = dump(witness->edges, a.edges);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_rewrite(const Options& o) {
  lhg::LinearHypergraph h = lhg::load_graph(read_text(o.input));
  lhg::Signature sig = o.sig.empty() ? lhg::infer_signature(h) : lhg::parse_signature(read_text(o.sig));
  std::vector<lhg::RewriteRule> rules = lhg::parse_rules(read_text(o.rules), sig);
  lhg::RewritePolicy policy;
  policy.max_steps = o.steps;
  if (o.strategy == "exhaustive") {
    policy.strategy = lhg::Strategy::Exhaustive;
  } else if (o.strategy != "deterministic") {
    throw lhg::ParseError("unknown strategy '" + o.strategy + "'", 0, 0);
  }
  lhg::NormalizeResult result = lhg::normalize(h, rules, policy);
  for (const auto& step : result.log) std::cerr << step.to_string() << "\n";
  if (policy.strategy == lhg::Strategy::Exhaustive) {
    std::cerr << result.normal_forms.size() << " normal form(s)\n";
  }
  std::cout << lhg::save_graph(result.graph);
  if (!o.dot.empty()) write_text(o.dot, lhg::to_dot(lhg::canonical(result.graph)));
  if (result.budget_exhausted) {
    std::cerr << "step budget of " << o.steps << " exhausted\n";
    return kBudget;
  }
  return kOk;
}

int cmd_evaluate(const Options& o) {
  lhg::CircuitSignature sig = load_circuit_signature(o.sig);
  std::string text = read_text(o.input);
  lhg::LinearHypergraph circuit = looks_like_json(text)
                                      ? lhg::load_graph(text)
                                      : lhg::interpret(lhg::parse_term(text, sig.signature()), sig.signature());
  std::vector<std::string> runs = o.inputs.empty() ? std::vector<std::string>{""} : o.inputs;
  for (const auto& run : runs) {
    lhg::EvaluationOptions options;
    options.max_steps = o.steps;
    lhg::Evaluation ev = lhg::evaluate(circuit, split(run, ','), sig, options);
    std::cout << (run.empty() ? "()" : run) << " => " << lhg::to_string(ev.outcome);
    for (const auto& v : ev.outputs) std::cout << " " << v;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_axioms(const Options& o) {
  lhg::Signature sig = o.sig.empty() ? lhg::sample_prop_signature() : lhg::parse_signature(read_text(o.sig));
  auto results = lhg::run_axiom_suite(sig, o.seed, o.instances);
  bool all = true;
  std::printf("%-22s %9s %7s %10s %8s\n", "scheme", "instances", "equal", "validated", "result");
  for (const auto& r : results) {
    all = all && r.passed();
    std::printf("%-22s %9zu %7zu %10zu %8s\n", r.scheme.c_str(), r.instances, r.equal, r.graphs_checked,
                r.passed() ? "ok" : "FAIL");
    if (r.counterexample) {
      std::printf("  counterexample: %s  vs  %s\n", lhg::render_term(r.counterexample->lhs).c_str(),
                  lhg::render_term(r.counterexample->rhs).c_str());
    }
  }
  return all ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear hypergraphs for traced monoidal categories"};
  app.require_subcommand(1);
  Options o;

  auto* interpret = app.add_subcommand("interpret", "Translate a term into a graph (JSON on stdout)");
  interpret->add_option("term", o.input, "File holding the term, or - for stdin")->required();
  interpret->add_option("--sig", o.sig, "Signature file")->required();
  interpret->add_option("--dot", o.dot, "Also write Graphviz output to this file");

  auto* extract = app.add_subcommand("extract", "Read a term back from a graph");
  extract->add_option("graph", o.input, "Graph JSON file")->required();
  extract->add_option("--order", o.order, "Comma-separated edge ids giving the edge order");

  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two graphs");
  iso->add_option("first", o.input, "Graph JSON file")->required();
  iso->add_option("second", o.second, "Graph JSON file")->required();

  auto* rewrite = app.add_subcommand("rewrite", "Normalize a graph under a rule file");
  rewrite->add_option("graph", o.input, "Graph JSON file")->required();
  rewrite->add_option("--rules", o.rules, "Rule file")->required();
  rewrite->add_option("--sig", o.sig, "Signature file (inferred from the graph when absent)");
  rewrite->add_option("--steps", o.steps, "Step budget");
  rewrite->add_option("--strategy", o.strategy, "deterministic or exhaustive");
  rewrite->add_option("--dot", o.dot, "Also write Graphviz output to this file");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a circuit on input values");
  evaluate->add_option("circuit", o.input, "Term or graph JSON file")->required();
  evaluate->add_option("--sig", o.sig, "Lattice file, or two-point / belnap");
  evaluate->add_option("--inputs", o.inputs, "Comma-separated input values; repeat for several runs");
  evaluate->add_option("--steps", o.steps, "Step budget");

  auto* axioms = app.add_subcommand("axioms-check", "Check the traced monoidal axioms on random instances");
  axioms->add_option("--sig", o.sig, "Signature file (a built-in one by default)");
  axioms->add_option("--seed", o.seed, "Random seed");
  axioms->add_option("--instances", o.instances, "Instances per scheme");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*interpret) return cmd_interpret(o);
    if (*extract) return cmd_extract(o);
    if (*iso) return cmd_iso(o);
    if (*rewrite) return cmd_rewrite(o);
    if (*evaluate) return cmd_evaluate(o);
    if (*axioms) return cmd_axioms(o);
  } catch (const lhg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const lhg::TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return kType;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
