#include "lhg/extract.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "lhg/error.hpp"
#include "lhg/interp.hpp"

namespace lhg {

namespace {

void check_order(const LinearHypergraph& h, const EdgeOrder& ord) {
  std::unordered_set<EdgeId> given(ord.begin(), ord.end());
  std::unordered_set<EdgeId> have(h.edges.begin(), h.edges.end());
  if (given.size() != ord.size() || given != have) {
    throw Error("edge order is not a permutation of the graph's edges");
  }
}

Word target_word(const LinearHypergraph& h, const std::vector<VertexId>& vs) {
  Word w;
  for (VertexId v : vs) w.push_back(h.target_label(v));
  return w;
}

Word source_word(const LinearHypergraph& h, const std::vector<VertexId>& vs) {
  Word w;
  for (VertexId v : vs) w.push_back(h.source_label(v));
  return w;
}

}  // namespace

LinearHypergraph untangle(const LinearHypergraph& h, const EdgeOrder& ord) {
  check_order(h, ord);
  Incidence inc(h);
  LinearHypergraph out = h;
  out.targets = inc.inputs;
  out.sources.clear();
  for (EdgeId e : ord) {
    const auto& ts = inc.edge_targets.at(e);
    out.targets.insert(out.targets.end(), ts.begin(), ts.end());
    const auto& ss = inc.edge_sources.at(e);
    out.sources.insert(out.sources.end(), ss.begin(), ss.end());
  }
  out.sources.insert(out.sources.end(), inc.outputs.begin(), inc.outputs.end());
  out.edges = ord;
  return out;
}

Term stack(const LinearHypergraph& h, const EdgeOrder& ord) {
  check_order(h, ord);
  std::optional<Term> acc;
  for (EdgeId e : ord) {
    Term g = h.is_identity_edge(e) ? Term::id({h.source_label(h.edge_sources(e).at(0))})
                                   : Term::gen(h.labels.at(e));
    acc = acc ? Term::tensor(*acc, g) : g;
  }
  return acc ? *acc : Term::id({});
}

Term shuffle(const LinearHypergraph& untangled) {
  const LinearHypergraph& h = untangled;
  std::unordered_map<VertexId, VertexId> conn_inv;
  for (const auto& [t, s] : h.conn) conn_inv[s] = t;
  // Built from the innermost step outwards: step k pulls the wire reaching
  // the k-th source to the top of the remaining wires.
  std::vector<VertexId> ts = h.targets;
  std::vector<Term> steps;
  std::vector<Word> heads;
  for (VertexId s : h.sources) {
    VertexId t = conn_inv.at(s);
    auto it = std::find(ts.begin(), ts.end(), t);
    Word above = target_word(h, std::vector<VertexId>(ts.begin(), it));
    Word below = target_word(h, std::vector<VertexId>(it + 1, ts.end()));
    Word wire = {h.target_label(t)};
    steps.push_back(Term::tensor(Term::swap(above, wire), Term::id(below)));
    heads.push_back(wire);
    ts.erase(it);
  }
  Term acc = Term::id({});
  for (std::size_t k = steps.size(); k-- > 0;) {
    acc = Term::seq(steps[k], Term::tensor(Term::id(heads[k]), acc));
  }
  return acc;
}

Term extract_term(const LinearHypergraph& h, const EdgeOrder& ord) {
  LinearHypergraph u = untangle(h, ord);
  Incidence inc(u);
  Word a = target_word(u, inc.inputs);
  Word b = source_word(u, inc.outputs);
  Word x = target_word(u, std::vector<VertexId>(u.targets.begin() + static_cast<std::ptrdiff_t>(inc.inputs.size()),
                                                u.targets.end()));
  Term body = Term::seq(Term::seq(Term::swap(x, a), shuffle(u)), Term::tensor(stack(u, ord), Term::id(b)));
  return Term::trace(x, body);
}

Term extract_term(const LinearHypergraph& h) {
  LinearHypergraph c = canonical(h);
  return extract_term(c, c.edges);
}

Signature infer_signature(const LinearHypergraph& h) {
  Signature sig;
  std::set<std::string> objects;
  for (EdgeId e : h.edges) {
    if (h.is_identity_edge(e)) continue;
    const std::string& label = h.labels.at(e);
    GeneratorType type{source_word(h, h.edge_sources(e)), target_word(h, h.edge_targets(e))};
    for (const auto& l : type.dom) if (!l.empty()) objects.insert(l);
    for (const auto& l : type.cod) if (!l.empty()) objects.insert(l);
    if (const GeneratorType* known = sig.find(label)) {
      if (!(*known == type)) throw Error("edges labelled '" + label + "' have different types");
      continue;
    }
    sig.add(label, std::move(type.dom), std::move(type.cod));
  }
  return sig;
}

bool check_coherence(const LinearHypergraph& h, std::size_t max_orders, std::uint64_t seed) {
  Signature sig = infer_signature(h);
  std::vector<EdgeOrder> orders;
  std::size_t n = h.edges.size();
  double factorial = 1;
  for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<double>(k);
  if (factorial <= static_cast<double>(max_orders)) {
    std::vector<std::size_t> idx(n);
    for (std::size_t k = 0; k < n; ++k) idx[k] = k;
    do {
      EdgeOrder o;
      for (std::size_t k : idx) o.push_back(h.edges[k]);
      orders.push_back(std::move(o));
    } while (std::next_permutation(idx.begin(), idx.end()));
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < max_orders; ++k) {
      EdgeOrder o = h.edges;
      std::shuffle(o.begin(), o.end(), rng);
      orders.push_back(std::move(o));
    }
  }
  if (orders.empty()) return true;
  LinearHypergraph first = interpret(extract_term(h, orders.front()), sig);
  for (std::size_t k = 1; k < orders.size(); ++k) {
    if (!isomorphic(first, interpret(extract_term(h, orders[k]), sig))) return false;
  }
  return true;
}

}  // namespace lhg
