#include "lhg/circuits.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "lexer.hpp"
#include "lhg/error.hpp"
#include "lhg/interp.hpp"
#include "lhg/ops.hpp"

namespace lhg {

ValueLattice::ValueLattice(std::vector<std::string> values, std::string bottom,
                           std::map<std::pair<std::string, std::string>, std::string> table)
    : values_(std::move(values)), bottom_(std::move(bottom)), join_(std::move(table)) {
  if (values_.empty()) throw Error("a lattice needs at least one value");
  std::set<std::string> seen;
  for (const auto& v : values_) {
    if (!seen.insert(v).second) throw Error("duplicate value '" + v + "'");
  }
  if (!contains(bottom_)) throw Error("bottom '" + bottom_ + "' is not a value");
  for (const auto& a : values_) {
    for (const auto& b : values_) {
      auto it = join_.find({a, b});
      if (it == join_.end()) throw Error("join of " + a + " and " + b + " is missing");
      if (!contains(it->second)) throw Error("join of " + a + " and " + b + " is not a value");
    }
  }
  for (const auto& a : values_) {
    if (join(a, a) != a) throw Error("join is not idempotent at " + a);
    if (join(bottom_, a) != a) throw Error(bottom_ + " is not a unit for join at " + a);
    for (const auto& b : values_) {
      if (join(a, b) != join(b, a)) throw Error("join is not commutative at " + a + ", " + b);
      for (const auto& c : values_) {
        if (join(join(a, b), c) != join(a, join(b, c))) {
          throw Error("join is not associative at " + a + ", " + b + ", " + c);
        }
      }
    }
  }
}

bool ValueLattice::contains(const std::string& v) const {
  return std::find(values_.begin(), values_.end(), v) != values_.end();
}

const std::string& ValueLattice::join(const std::string& a, const std::string& b) const {
  auto it = join_.find({a, b});
  if (it == join_.end()) throw Error("no join for " + a + " and " + b);
  return it->second;
}

bool ValueLattice::leq(const std::string& a, const std::string& b) const { return join(a, b) == b; }

std::size_t ValueLattice::height() const {
  std::map<std::string, std::size_t> above;  // longest chain starting at a value
  std::function<std::size_t(const std::string&)> chain = [&](const std::string& v) -> std::size_t {
    if (auto it = above.find(v); it != above.end()) return it->second;
    std::size_t best = 0;
    for (const auto& w : values_) {
      if (w != v && leq(v, w)) best = std::max(best, chain(w) + 1);
    }
    return above[v] = best;
  };
  return chain(bottom_);
}

CircuitSignature::CircuitSignature(ValueLattice lattice, std::vector<Gate> gates)
    : lattice_(std::move(lattice)), gates_(std::move(gates)) {
  for (const auto& v : lattice_.values()) signature_.add(v, nat(0), nat(1));
  signature_.add(kFork, nat(1), nat(2));
  signature_.add(kJoin, nat(2), nat(1));
  signature_.add(kStub, nat(1), nat(0));
  signature_.add(kDelay, nat(1), nat(1));
  const auto& values = lattice_.values();
  for (const auto& g : gates_) {
    signature_.add(g.name, nat(g.arity), nat(1));
    std::vector<std::size_t> digits(g.arity, 0);
    std::vector<std::vector<std::string>> rows;
    while (true) {
      std::vector<std::string> row;
      for (std::size_t d : digits) row.push_back(values[d]);
      auto it = g.table.find(row);
      if (it == g.table.end()) {
        std::string text;
        for (const auto& v : row) text += (text.empty() ? "" : " ") + v;
        throw Error("gate " + g.name + " has no row for (" + text + ")");
      }
      if (!lattice_.contains(it->second)) throw Error("gate " + g.name + " yields unknown value " + it->second);
      rows.push_back(row);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == values.size()) digits[i++] = 0;
      if (i == digits.size()) break;
    }
    for (const auto& a : rows) {
      for (const auto& b : rows) {
        bool below = true;
        for (std::size_t i = 0; i < a.size(); ++i) below = below && lattice_.leq(a[i], b[i]);
        if (below && !lattice_.leq(g.table.at(a), g.table.at(b))) {
          std::string text;
          for (std::size_t i = 0; i < a.size(); ++i) text += (i ? " " : "") + a[i] + "<=" + b[i];
          throw Error("gate " + g.name + " is not monotone at " + text);
        }
      }
    }
  }
}

const Gate* CircuitSignature::find_gate(const std::string& name) const {
  for (const auto& g : gates_) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

const std::string& CircuitSignature::apply(const Gate& gate, const std::vector<std::string>& args) const {
  auto it = gate.table.find(args);
  if (it == gate.table.end()) throw Error("gate " + gate.name + " applied to the wrong arguments");
  return it->second;
}

namespace {

std::vector<std::string> split_values(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// `a b -> c`
std::pair<std::vector<std::string>, std::string> parse_row(std::string_view text, std::size_t line) {
  std::size_t arrow = text.find("->");
  if (arrow == std::string_view::npos) throw ParseError("expected '->' in row", line, 1);
  auto rhs = split_values(text.substr(arrow + 2));
  if (rhs.size() != 1) throw ParseError("expected one value after '->'", line, 1);
  return {split_values(text.substr(0, arrow)), rhs[0]};
}

}  // namespace

CircuitSignature parse_circuit_signature(std::string_view text) {
  std::vector<std::string> values;
  std::optional<std::string> bottom;
  std::map<std::pair<std::string, std::string>, std::string> join;
  std::vector<Gate> gates;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected a ':'", line_no, 1);
    std::string_view head = detail::trim(line.substr(0, colon));
    std::string_view body = line.substr(colon + 1);
    if (head == "values") {
      values = split_values(body);
    } else if (head == "bottom") {
      auto b = split_values(body);
      if (b.size() != 1) throw ParseError("expected one bottom value", line_no, colon + 2);
      bottom = b[0];
    } else if (head == "join") {
      auto [args, result] = parse_row(body, line_no);
      if (args.size() != 2) throw ParseError("a join row takes two values", line_no, colon + 2);
      join[{args[0], args[1]}] = result;
    } else if (head.substr(0, 5) == "gate ") {
      auto words = split_values(head.substr(5));
      if (words.size() != 3 || words[1] != "arity") {
        throw ParseError("expected 'gate NAME arity N'", line_no, 1);
      }
      Gate g;
      g.name = words[0];
      try {
        g.arity = std::stoul(words[2]);
      } catch (const std::exception&) {
        throw ParseError("arity must be a number", line_no, 1);
      }
      std::string rows(body);
      std::stringstream ss(rows);
      std::string row;
      while (std::getline(ss, row, ';')) {
        if (detail::trim(row).empty()) continue;
        auto [args, result] = parse_row(row, line_no);
        if (args.size() != g.arity) {
          throw ParseError("row of gate " + g.name + " has the wrong number of values", line_no, 1);
        }
        g.table[args] = result;
      }
      gates.push_back(std::move(g));
    } else {
      throw ParseError("unknown entry '" + std::string(head) + "'", line_no, 1);
    }
  }
  if (values.empty()) throw ParseError("missing 'values:'", line_no, 1);
  if (!bottom) throw ParseError("missing 'bottom:'", line_no, 1);
  for (const auto& a : values) {
    join.try_emplace({a, a}, a);
    join.try_emplace({*bottom, a}, a);
    join.try_emplace({a, *bottom}, a);
  }
  for (const auto& a : values) {
    for (const auto& b : values) {
      if (auto it = join.find({b, a}); it != join.end()) join.try_emplace({a, b}, it->second);
    }
  }
  return CircuitSignature(ValueLattice(values, *bottom, join), gates);
}

CircuitSignature two_point_circuits() {
  return parse_circuit_signature(
      "values: bot, top\n"
      "bottom: bot\n"
      "gate and arity 2: bot bot -> bot; bot top -> bot; top bot -> bot; top top -> top\n"
      "gate or arity 2: bot bot -> bot; bot top -> top; top bot -> top; top top -> top\n");
}

CircuitSignature belnap_circuits() {
  std::vector<std::string> values = {"bot", "false", "true", "top"};
  // Truth order: false < bot, top < true; and/or are its meet and join.
  auto rank = [](const std::string& v) { return v == "false" ? 0 : v == "true" ? 2 : 1; };
  auto meet = [&](const std::string& a, const std::string& b) -> std::string {
    if (a == b) return a;
    if (rank(a) != rank(b)) return rank(a) < rank(b) ? a : b;
    return "false";  // bot and top
  };
  auto join = [&](const std::string& a, const std::string& b) -> std::string {
    if (a == b) return a;
    if (rank(a) != rank(b)) return rank(a) > rank(b) ? a : b;
    return "true";
  };
  std::ostringstream text;
  text << "values: bot, false, true, top\nbottom: bot\njoin: false true -> top\n";
  text << "join: false top -> top\njoin: true top -> top\n";
  text << "gate and arity 2:";
  for (const auto& a : values) {
    for (const auto& b : values) text << " " << a << " " << b << " -> " << meet(a, b) << ";";
  }
  text << "\ngate or arity 2:";
  for (const auto& a : values) {
    for (const auto& b : values) text << " " << a << " " << b << " -> " << join(a, b) << ";";
  }
  text << "\ngate not arity 1: bot -> bot; false -> true; true -> false; top -> top\n";
  return parse_circuit_signature(text.str());
}

namespace {

Term ids(std::size_t n) { return Term::id(nat(n)); }
Term gen(const std::string& name) { return Term::gen(name); }

Term repeat_tensor(const Term& t, std::size_t n) { return tensor_of(std::vector<Term>(n, t)); }

Term interleave(std::size_t n) {
  if (n <= 1) return ids(2 * n);
  Term step = tensor_of({ids(1), Term::swap(nat(n - 1), nat(1)), ids(n - 1)});
  return Term::seq(step, tensor_of({ids(2), interleave(n - 1)}));
}

Term values_term(const std::vector<std::string>& vs) {
  std::vector<Term> factors;
  for (const auto& v : vs) factors.push_back(gen(v));
  return tensor_of(factors);
}

void add_rule(std::vector<RewriteRule>& rules, const std::string& name, const Term& lhs, const Term& rhs,
              const CircuitSignature& sig) {
  rules.push_back(rule_from_terms(name, lhs, rhs, sig.signature()));
}

// Every tuple of n lattice values.
std::vector<std::vector<std::string>> tuples(const ValueLattice& lattice, std::size_t n) {
  std::vector<std::vector<std::string>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : out) {
      for (const auto& v : lattice.values()) {
        auto row = prefix;
        row.push_back(v);
        next.push_back(std::move(row));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string tuple_name(const std::vector<std::string>& vs) {
  std::string out;
  for (const auto& v : vs) out += (out.empty() ? "" : ",") + v;
  return out;
}

}  // namespace

Term copy_term(std::size_t n) {
  if (n == 0) return ids(0);
  if (n == 1) return gen(CircuitSignature::kFork);
  Term both = Term::tensor(copy_term(n - 1), gen(CircuitSignature::kFork));
  return Term::seq(both, tensor_of({ids(n - 1), Term::swap(nat(n - 1), nat(1)), ids(1)}));
}

Term del_term(std::size_t n) { return repeat_tensor(gen(CircuitSignature::kStub), n); }

Term merge_term(std::size_t n) {
  if (n == 0) return ids(0);
  return Term::seq(interleave(n), repeat_tensor(gen(CircuitSignature::kJoin), n));
}

std::vector<RewriteRule> cartesian_rules(const CircuitSignature& sig) {
  std::vector<RewriteRule> rules;
  const Term fork = gen(CircuitSignature::kFork);
  const Term stub = gen(CircuitSignature::kStub);
  for (const auto& [name, type] : sig.signature().generators()) {
    std::size_t m = type.dom.size();
    std::size_t n = type.cod.size();
    add_rule(rules, "copy-nat[" + name + "]", Term::seq(gen(name), copy_term(n)),
             Term::seq(copy_term(m), Term::tensor(gen(name), gen(name))), sig);
  }
  for (const auto& [name, type] : sig.signature().generators()) {
    add_rule(rules, "del-nat[" + name + "]", Term::seq(gen(name), del_term(type.cod.size())),
             del_term(type.dom.size()), sig);
  }
  add_rule(rules, "coassoc", Term::seq(fork, Term::tensor(fork, ids(1))), Term::seq(fork, Term::tensor(ids(1), fork)),
           sig);
  add_rule(rules, "counit-left", Term::seq(fork, Term::tensor(stub, ids(1))), ids(1), sig);
  add_rule(rules, "counit-right", Term::seq(fork, Term::tensor(ids(1), stub)), ids(1), sig);
  add_rule(rules, "cocomm", Term::seq(fork, Term::swap(nat(1), nat(1))), fork, sig);
  add_rule(rules, "copy-unit", copy_term(0), ids(0), sig);
  add_rule(rules, "copy-tensor",
           Term::seq(copy_term(2), tensor_of({ids(1), Term::swap(nat(1), nat(1)), ids(1)})),
           Term::tensor(fork, fork), sig);
  add_rule(rules, "del-unit", del_term(0), ids(0), sig);
  add_rule(rules, "del-tensor", del_term(2), Term::tensor(stub, stub), sig);
  return rules;
}

std::vector<RewriteRule> cartesian_evaluation_rules(const CircuitSignature& sig) {
  std::vector<RewriteRule> out;
  for (auto& r : cartesian_rules(sig)) {
    if (r.name.rfind("del-nat[", 0) == 0 || r.name == "counit-left" || r.name == "counit-right") {
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<RewriteRule> circuit_rules(const CircuitSignature& sig) {
  std::vector<RewriteRule> rules;
  const ValueLattice& lat = sig.lattice();
  const Term fork = gen(CircuitSignature::kFork);
  const Term join = gen(CircuitSignature::kJoin);
  const Term stub = gen(CircuitSignature::kStub);
  const Term delay = gen(CircuitSignature::kDelay);
  for (const auto& g : sig.gates()) {
    add_rule(rules, "delay-" + g.name, Term::seq(repeat_tensor(delay, g.arity), gen(g.name)),
             Term::seq(gen(g.name), delay), sig);
  }
  for (const auto& g : sig.gates()) {
    std::size_t m = g.arity;
    if (m == 0) continue;
    for (const auto& row : tuples(lat, m)) {
      Term head = Term::tensor(repeat_tensor(delay, m), values_term(row));
      Term lhs = Term::seq(Term::seq(head, merge_term(m)), gen(g.name));
      Term tail = Term::seq(repeat_tensor(delay, m), gen(g.name));
      Term now = Term::seq(values_term(row), gen(g.name));
      Term rhs = Term::seq(Term::tensor(tail, now), merge_term(1));
      add_rule(rules, "stream-" + g.name + "[" + tuple_name(row) + "]", lhs, rhs, sig);
    }
  }
  for (const auto& v : lat.values()) {
    add_rule(rules, "fork[" + v + "]", Term::seq(gen(v), fork), Term::tensor(gen(v), gen(v)), sig);
  }
  for (const auto& v : lat.values()) {
    for (const auto& w : lat.values()) {
      add_rule(rules, "join[" + v + "," + w + "]", Term::seq(Term::tensor(gen(v), gen(w)), join),
               gen(lat.join(v, w)), sig);
    }
  }
  for (const auto& v : lat.values()) {
    add_rule(rules, "stub[" + v + "]", Term::seq(gen(v), stub), ids(0), sig);
  }
  for (const auto& g : sig.gates()) {
    for (const auto& row : tuples(lat, g.arity)) {
      add_rule(rules, g.name + "[" + tuple_name(row) + "]", Term::seq(values_term(row), gen(g.name)),
               gen(sig.apply(g, row)), sig);
    }
  }
  add_rule(rules, "delay[" + lat.bottom() + "]", Term::seq(gen(lat.bottom()), delay), gen(lat.bottom()), sig);
  add_rule(rules, "delay-stub", Term::seq(delay, stub), stub, sig);
  return rules;
}

EdgeRegion region_of(const LinearHypergraph& g, const std::vector<EdgeId>& edges) {
  std::unordered_set<EdgeId> in(edges.begin(), edges.end());
  auto member = [&](const Attachment& a) { return a && in.count(*a); };
  Incidence inc(g);
  EdgeRegion r;
  std::unordered_set<VertexId> keep;
  for (VertexId t : g.targets) {
    if (member(g.left.at(t))) {
      keep.insert(t);
      if (member(g.right.at(g.conn.at(t)))) r.internal.push_back(t);
    }
  }
  for (VertexId s : g.sources) {
    if (member(g.right.at(s))) keep.insert(s);
  }
  for (VertexId t : g.targets) {
    if (member(g.left.at(t))) keep.insert(g.conn.at(t));
  }
  for (VertexId s : g.sources) {
    if (member(g.right.at(s))) keep.insert(inc.conn_inverse.at(s));
  }
  LinearHypergraph& h = r.graph;
  for (VertexId t : g.targets) {
    if (!keep.count(t)) continue;
    h.targets.push_back(t);
    h.left[t] = member(g.left.at(t)) ? g.left.at(t) : Attachment();
    h.conn[t] = g.conn.at(t);
    if (const auto& l = g.target_label(t); !l.empty()) h.vtlabels[t] = l;
  }
  for (VertexId s : g.sources) {
    if (!keep.count(s)) continue;
    h.sources.push_back(s);
    h.right[s] = member(g.right.at(s)) ? g.right.at(s) : Attachment();
    if (const auto& l = g.source_label(s); !l.empty()) h.vslabels[s] = l;
  }
  for (EdgeId e : g.edges) {
    if (!in.count(e)) continue;
    r.edges.push_back(e);
    h.edges.push_back(e);
    h.labels[e] = g.labels.at(e);
  }
  return r;
}

namespace {

// Edge-level successor lists: e -> edges consuming one of e's targets.
std::unordered_map<EdgeId, std::vector<EdgeId>> successors(const LinearHypergraph& g) {
  std::unordered_map<EdgeId, std::vector<EdgeId>> out;
  for (EdgeId e : g.edges) out[e];
  for (VertexId t : g.targets) {
    const Attachment& from = g.left.at(t);
    const Attachment& to = g.right.at(g.conn.at(t));
    if (from && to) out[*from].push_back(*to);
  }
  return out;
}

bool is_value_edge(const LinearHypergraph& g, EdgeId e, const CircuitSignature& sig) {
  return sig.lattice().contains(g.labels.at(e));
}

// The region with its internal wires cut: X ++ A -> X ++ B.
LinearHypergraph open_region(const EdgeRegion& region) {
  const LinearHypergraph& h = region.graph;
  LinearHypergraph f;
  std::vector<VertexId> new_sources, new_targets;
  for (VertexId t : region.internal) {
    VertexId s_cut = fresh_vertex();
    VertexId t_cut = fresh_vertex();
    new_targets.push_back(t_cut);
    new_sources.push_back(s_cut);
    f.right[s_cut] = std::nullopt;
    f.left[t_cut] = std::nullopt;
    f.conn[t_cut] = h.conn.at(t);
    if (const auto& l = h.target_label(t); !l.empty()) {
      f.vtlabels[t_cut] = l;
      f.vslabels[s_cut] = l;
    }
  }
  f.targets = new_targets;
  f.sources = new_sources;
  for (VertexId t : h.targets) f.targets.push_back(t);
  for (VertexId s : h.sources) f.sources.push_back(s);
  for (VertexId t : h.targets) f.left[t] = h.left.at(t);
  for (VertexId s : h.sources) f.right[s] = h.right.at(s);
  for (VertexId t : h.targets) f.conn[t] = h.conn.at(t);
  for (std::size_t i = 0; i < region.internal.size(); ++i) f.conn[region.internal[i]] = new_sources[i];
  f.vtlabels.insert(h.vtlabels.begin(), h.vtlabels.end());
  f.vslabels.insert(h.vslabels.begin(), h.vslabels.end());
  f.edges = h.edges;
  f.labels = h.labels;
  return f;
}

LinearHypergraph term_graph(const Term& t, const CircuitSignature& sig) { return interpret(t, sig.signature()); }

}  // namespace

std::vector<std::vector<EdgeId>> feedback_components(const LinearHypergraph& g) {
  auto succ = successors(g);
  // Tarjan's algorithm; components come out in reverse topological order.
  std::unordered_map<EdgeId, std::size_t> index, low;
  std::unordered_set<EdgeId> on_stack;
  std::vector<EdgeId> stack;
  std::vector<std::vector<EdgeId>> comps;
  std::size_t counter = 0;
  std::function<void(EdgeId)> connect = [&](EdgeId v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (EdgeId w : succ.at(v)) {
      if (!index.count(w)) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<EdgeId> comp;
      EdgeId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
      } while (w != v);
      bool cyclic = comp.size() > 1 || std::count(succ.at(v).begin(), succ.at(v).end(), v) > 0;
      if (cyclic) comps.push_back(std::move(comp));
    }
  };
  for (EdgeId e : g.edges) {
    if (!index.count(e)) connect(e);
  }
  std::reverse(comps.begin(), comps.end());
  std::unordered_map<EdgeId, std::size_t> position;
  for (std::size_t i = 0; i < g.edges.size(); ++i) position[g.edges[i]] = i;
  for (auto& c : comps) {
    std::sort(c.begin(), c.end(), [&](EdgeId a, EdgeId b) { return position[a] < position[b]; });
  }
  return comps;
}

std::vector<EdgeId> dead_edges(const LinearHypergraph& g) {
  Incidence inc(g);
  std::unordered_set<EdgeId> live;
  std::vector<EdgeId> work;
  auto mark_producer = [&](VertexId s) {
    if (auto e = inc.target_port.at(inc.conn_inverse.at(s)).edge; e && live.insert(*e).second) work.push_back(*e);
  };
  for (VertexId s : inc.outputs) mark_producer(s);
  while (!work.empty()) {
    EdgeId e = work.back();
    work.pop_back();
    for (VertexId s : inc.edge_sources.at(e)) mark_producer(s);
  }
  std::vector<EdgeId> out;
  for (EdgeId e : g.edges) {
    if (!live.count(e)) out.push_back(e);
  }
  return out;
}

RewriteRule collection_rule(const EdgeRegion& region, const CircuitSignature& sig) {
  std::size_t inputs = region.graph.dom().size();
  return rule_from_graphs("collect", region.graph, term_graph(del_term(inputs), sig));
}

RewriteRule closure_rule(const EdgeRegion& region, const CircuitSignature& sig, std::size_t iterations) {
  std::size_t w = region.internal.size();
  std::size_t a = region.graph.dom().size();
  std::size_t b = region.graph.cod().size();
  LinearHypergraph f = open_region(region);
  auto id = [](std::size_t n) { return identity(nat(n)); };
  LinearHypergraph copy_a = term_graph(copy_term(a), sig);
  LinearHypergraph step = compose(compose(tensor(id(w), copy_a), tensor(f, id(a))),
                                  tensor(tensor(id(w), term_graph(del_term(b), sig)), id(a)));
  LinearHypergraph body =
      tensor(term_graph(repeat_tensor(gen(sig.lattice().bottom()), w), sig), id(a));
  for (std::size_t i = 0; i < iterations; ++i) body = compose(body, step);
  body = compose(compose(body, f), tensor(term_graph(del_term(w), sig), id(b)));
  return rule_from_graphs("closure", region.graph, body);
}

RewriteRule unfold_rule(const EdgeRegion& region, const CircuitSignature& sig) {
  std::size_t w = region.internal.size();
  std::size_t a = region.graph.dom().size();
  std::size_t b = region.graph.cod().size();
  LinearHypergraph f = open_region(region);
  auto id = [](std::size_t n) { return identity(nat(n)); };
  LinearHypergraph loop = trace(nat(w), compose(f, tensor(term_graph(copy_term(w), sig),
                                                          term_graph(del_term(b), sig))));
  LinearHypergraph body = compose(term_graph(copy_term(a), sig), tensor(loop, id(a)));
  body = compose(compose(body, f), tensor(term_graph(del_term(w), sig), id(b)));
  return rule_from_graphs("unfold", region.graph, body);
}

namespace {

bool outputs_are_values(const LinearHypergraph& g, const CircuitSignature& sig, std::vector<std::string>& out) {
  Incidence inc(g);
  out.clear();
  for (VertexId s : inc.outputs) {
    auto e = inc.target_port.at(inc.conn_inverse.at(s)).edge;
    if (!e || !is_value_edge(g, *e, sig)) return false;
    out.push_back(g.labels.at(*e));
  }
  return true;
}

// Applies a rule whose left side is literally a subgraph of g.
LinearHypergraph rewrite_region(const LinearHypergraph& g, const RewriteRule& rule) {
  return canonical(apply_rewrite(g, rule, identity_homomorphism(rule.lhs)));
}

}  // namespace

CircuitEvaluator::CircuitEvaluator(CircuitSignature sig) : sig_(std::move(sig)) {
  for (const auto& r : circuit_rules(sig_)) rules_.push_back(prepare_rule(r));
  for (const auto& r : cartesian_evaluation_rules(sig_)) rules_.push_back(prepare_rule(r));
}

Evaluation CircuitEvaluator::run(const LinearHypergraph& circuit, const std::vector<std::string>& inputs,
                                 const EvaluationOptions& options) const {
  const CircuitSignature& sig = sig_;
  if (auto report = validate(circuit, sig.signature()); !report.ok()) {
    throw TypeError("not a circuit over this signature: " + report.to_string());
  }
  if (!is_anonymous(circuit.dom()) || !is_anonymous(circuit.cod())) {
    throw TypeError("circuits have unlabelled wires");
  }
  if (circuit.dom().size() != inputs.size()) {
    throw TypeError("circuit takes " + std::to_string(circuit.dom().size()) + " inputs, given " +
                    std::to_string(inputs.size()));
  }
  for (const auto& v : inputs) {
    if (!sig.lattice().contains(v)) throw TypeError("'" + v + "' is not a value");
  }
  std::vector<Term> feed;
  for (const auto& v : inputs) feed.push_back(gen(v));


  Evaluation result;
  LinearHypergraph g = canonical(compose(term_graph(tensor_of(feed), sig), circuit));
  auto record = [&](const std::string& name, const std::vector<EdgeId>& edges) {
    ++result.steps;
    result.log.push_back({result.steps, name, edges});
  };
  while (true) {
    RewritePolicy policy;
    policy.max_steps = options.max_steps - result.steps;
    NormalizeResult nr = normalize(g, rules_, policy);
    for (auto step : nr.log) {
      step.index += result.steps;
      result.log.push_back(std::move(step));
    }
    result.steps += nr.steps;
    g = std::move(nr.graph);
    if (nr.budget_exhausted) {
      result.outcome = Outcome::Unproductive;
      break;
    }
    if (outputs_are_values(g, sig, result.outputs)) {
      result.outcome = Outcome::Values;
      break;
    }
    result.outputs.clear();
    if (result.steps >= options.max_steps) {
      result.outcome = Outcome::Unproductive;
      break;
    }
    std::vector<EdgeId> dead = dead_edges(g);
    bool collectable = std::any_of(dead.begin(), dead.end(),
                                   [&](EdgeId e) { return g.labels.at(e) != CircuitSignature::kStub; });
    if (collectable) {
      EdgeRegion region = region_of(g, dead);
      g = rewrite_region(g, collection_rule(region, sig));
      record("collect", region.edges);
      continue;
    }
    Incidence inc(g);
    std::optional<EdgeRegion> ready;
    for (const auto& comp : feedback_components(g)) {
      EdgeRegion region = region_of(g, comp);
      bool fed = true;
      for (VertexId t : region.graph.inputs()) {
        auto e = inc.target_port.at(t).edge;
        fed = fed && e && is_value_edge(g, *e, sig);
      }
      if (fed) {
        ready = std::move(region);
        break;
      }
    }
    if (!ready) {
      result.outcome = Outcome::NonValue;
      break;
    }
    bool delayed = std::any_of(ready->edges.begin(), ready->edges.end(),
                               [&](EdgeId e) { return g.labels.at(e) == CircuitSignature::kDelay; });
    if (delayed) {
      g = rewrite_region(g, unfold_rule(*ready, sig));
      record("unfold", ready->edges);
    } else {
      std::size_t n = std::max<std::size_t>(1, sig.lattice().height() * ready->internal.size());
      g = rewrite_region(g, closure_rule(*ready, sig, n));
      record("closure", ready->edges);
    }
  }
  result.graph = std::move(g);
  return result;
}

Evaluation evaluate(const LinearHypergraph& circuit, const std::vector<std::string>& inputs,
                    const CircuitSignature& sig, const EvaluationOptions& options) {
  return CircuitEvaluator(sig).run(circuit, inputs, options);
}

Evaluation evaluate(const Term& circuit, const std::vector<std::string>& inputs, const CircuitSignature& sig,
                    const EvaluationOptions& options) {
  return evaluate(interpret(circuit, sig.signature()), inputs, sig, options);
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Values:
      return "VALUES";
    case Outcome::Unproductive:
      return "UNPRODUCTIVE";
    case Outcome::NonValue:
      return "NON-VALUE";
  }
  return "?";
}

}  // namespace lhg
