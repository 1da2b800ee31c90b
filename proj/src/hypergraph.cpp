#include "lhg/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "lhg/error.hpp"

namespace lhg {

namespace {

const std::string kAnonymous;

template <class K, class V>
const V* lookup(const std::unordered_map<K, V>& m, const K& k) {
  auto it = m.find(k);
  return it == m.end() ? nullptr : &it->second;
}

std::string id_text(std::uint64_t v) { return std::to_string(v); }

}  // namespace

std::vector<VertexId> LinearHypergraph::inputs() const {
  std::vector<VertexId> out;
  for (VertexId t : targets) {
    const Attachment* a = lookup(left, t);
    if (a && !a->has_value()) out.push_back(t);
  }
  return out;
}

std::vector<VertexId> LinearHypergraph::outputs() const {
  std::vector<VertexId> out;
  for (VertexId s : sources) {
    const Attachment* a = lookup(right, s);
    if (a && !a->has_value()) out.push_back(s);
  }
  return out;
}

std::vector<VertexId> LinearHypergraph::edge_sources(EdgeId e) const {
  std::vector<VertexId> out;
  for (VertexId s : sources) {
    const Attachment* a = lookup(right, s);
    if (a && *a == e) out.push_back(s);
  }
  return out;
}

std::vector<VertexId> LinearHypergraph::edge_targets(EdgeId e) const {
  std::vector<VertexId> out;
  for (VertexId t : targets) {
    const Attachment* a = lookup(left, t);
    if (a && *a == e) out.push_back(t);
  }
  return out;
}

const std::string& LinearHypergraph::target_label(VertexId v) const {
  const std::string* l = lookup(vtlabels, v);
  return l ? *l : kAnonymous;
}

const std::string& LinearHypergraph::source_label(VertexId v) const {
  const std::string* l = lookup(vslabels, v);
  return l ? *l : kAnonymous;
}

Word LinearHypergraph::dom() const {
  Word w;
  for (VertexId v : inputs()) w.push_back(target_label(v));
  return w;
}

Word LinearHypergraph::cod() const {
  Word w;
  for (VertexId v : outputs()) w.push_back(source_label(v));
  return w;
}

bool LinearHypergraph::is_identity_edge(EdgeId e) const {
  const std::string* l = lookup(labels, e);
  return l && *l == kIdentityLabel;
}

Incidence::Incidence(const LinearHypergraph& h) {
  for (EdgeId e : h.edges) {
    edge_targets[e];
    edge_sources[e];
  }
  for (VertexId t : h.targets) {
    Attachment a = h.left.at(t);
    if (a) {
      auto& list = edge_targets[*a];
      target_port[t] = {a, list.size()};
      list.push_back(t);
    } else {
      target_port[t] = {a, inputs.size()};
      inputs.push_back(t);
    }
  }
  for (VertexId s : h.sources) {
    Attachment a = h.right.at(s);
    if (a) {
      auto& list = edge_sources[*a];
      source_port[s] = {a, list.size()};
      list.push_back(s);
    } else {
      source_port[s] = {a, outputs.size()};
      outputs.push_back(s);
    }
  }
  for (const auto& [t, s] : h.conn) conn_inverse[s] = t;
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& v : violations) out += v.clause + ": " + v.detail + "\n";
  return out;
}

namespace {

void validate_into(const LinearHypergraph& h, const Signature* sig, ValidationReport& report) {
  auto report_violation = [&](std::string clause, std::string detail) {
    report.violations.push_back({std::move(clause), std::move(detail)});
  };

  std::unordered_set<VertexId> tset, sset;
  std::unordered_set<EdgeId> eset;
  for (VertexId t : h.targets) {
    if (!tset.insert(t).second) report_violation("distinct-ids", "target " + id_text(t.value) + " repeated");
  }
  for (VertexId s : h.sources) {
    if (!sset.insert(s).second) report_violation("distinct-ids", "source " + id_text(s.value) + " repeated");
    if (tset.count(s)) report_violation("distinct-ids", "vertex " + id_text(s.value) + " is both target and source");
  }
  for (EdgeId e : h.edges) {
    if (!eset.insert(e).second) report_violation("distinct-ids", "edge " + id_text(e.value) + " repeated");
    if (tset.count(VertexId{e.value}) || sset.count(VertexId{e.value})) {
      report_violation("distinct-ids", "edge " + id_text(e.value) + " shares its id with a vertex");
    }
  }
  if (h.targets.size() != h.sources.size()) {
    report_violation("equal-cardinality", std::to_string(h.targets.size()) + " targets but " +
                                              std::to_string(h.sources.size()) + " sources");
  }

  auto check_attachment = [&](const char* name, const std::unordered_map<VertexId, Attachment>& m,
                              const std::vector<VertexId>& domain, const std::unordered_set<VertexId>& dset) {
    for (VertexId v : domain) {
      const Attachment* a = lookup(m, v);
      if (!a) {
        report_violation(std::string(name) + "-total", "vertex " + id_text(v.value) + " unassigned");
      } else if (*a && !eset.count(**a)) {
        report_violation(std::string(name) + "-range",
                         "vertex " + id_text(v.value) + " assigned to unknown edge " + id_text((*a)->value));
      }
    }
    for (const auto& [v, a] : m) {
      if (!dset.count(v)) report_violation(std::string(name) + "-domain", "stray vertex " + id_text(v.value));
    }
  };
  check_attachment("left", h.left, h.targets, tset);
  check_attachment("right", h.right, h.sources, sset);

  std::unordered_map<VertexId, VertexId> hit;
  for (VertexId t : h.targets) {
    const VertexId* s = lookup(h.conn, t);
    if (!s) {
      report_violation("conn-total", "target " + id_text(t.value) + " has no connection");
      continue;
    }
    if (!sset.count(*s)) {
      report_violation("conn-range", "target " + id_text(t.value) + " connects to non-source " + id_text(s->value));
      continue;
    }
    auto [it, fresh] = hit.emplace(*s, t);
    if (!fresh) {
      report_violation("conn-injective", "source " + id_text(s->value) + " reached from targets " +
                                             id_text(it->second.value) + " and " + id_text(t.value));
    }
  }
  for (const auto& [t, s] : h.conn) {
    if (!tset.count(t)) report_violation("conn-domain", "stray target " + id_text(t.value));
  }
  for (VertexId s : h.sources) {
    if (!hit.count(s)) report_violation("conn-surjective", "source " + id_text(s.value) + " is not connected");
  }

  for (EdgeId e : h.edges) {
    if (!lookup(h.labels, e)) report_violation("labels-total", "edge " + id_text(e.value) + " unlabelled");
  }
  for (const auto& [e, l] : h.labels) {
    if (!eset.count(e)) report_violation("labels-domain", "stray edge " + id_text(e.value));
  }
  for (const auto& [v, l] : h.vtlabels) {
    if (!tset.count(v)) report_violation("vertex-labels-domain", "stray target " + id_text(v.value));
  }
  for (const auto& [v, l] : h.vslabels) {
    if (!sset.count(v)) report_violation("vertex-labels-domain", "stray source " + id_text(v.value));
  }
  if (!report.ok()) return;

  for (VertexId t : h.targets) {
    VertexId s = h.conn.at(t);
    if (h.target_label(t) != h.source_label(s)) {
      report_violation("vertex-label-wire", "target " + id_text(t.value) + " and source " + id_text(s.value) +
                                                " carry different objects");
    }
  }

  Incidence inc(h);
  for (EdgeId e : h.edges) {
    const std::string& label = h.labels.at(e);
    const auto& srcs = inc.edge_sources.at(e);
    const auto& tgts = inc.edge_targets.at(e);
    Word dom_here, cod_here;
    for (VertexId s : srcs) dom_here.push_back(h.source_label(s));
    for (VertexId t : tgts) cod_here.push_back(h.target_label(t));
    if (label == kIdentityLabel) {
      if (srcs.size() != 1 || tgts.size() != 1) {
        report_violation("arity", "identity edge " + id_text(e.value) + " must have one source and one target");
      } else if (dom_here != cod_here) {
        report_violation("edge-objects", "identity edge " + id_text(e.value) + " changes object");
      }
      continue;
    }
    if (!sig) continue;
    const GeneratorType* g = sig->find(label);
    if (!g) {
      report_violation("unknown-label", "edge " + id_text(e.value) + " labelled '" + label + "'");
      continue;
    }
    if (srcs.size() != g->dom.size() || tgts.size() != g->cod.size()) {
      report_violation("arity", "edge " + id_text(e.value) + " '" + label + "' has " +
                                    std::to_string(srcs.size()) + " sources and " + std::to_string(tgts.size()) +
                                    " targets");
    } else if (dom_here != g->dom || cod_here != g->cod) {
      report_violation("edge-objects", "edge " + id_text(e.value) + " '" + label + "' has objects " +
                                           render_word(dom_here) + " -> " + render_word(cod_here));
    }
  }
}

}  // namespace

ValidationReport validate(const LinearHypergraph& h) {
  ValidationReport report;
  validate_into(h, nullptr, report);
  return report;
}

ValidationReport validate(const LinearHypergraph& h, const Signature& sig) {
  ValidationReport report;
  validate_into(h, &sig, report);
  return report;
}

Homomorphism identity_homomorphism(const LinearHypergraph& h) {
  Homomorphism id;
  for (VertexId t : h.targets) id.targets[t] = t;
  for (VertexId s : h.sources) id.sources[s] = s;
  for (EdgeId e : h.edges) id.edges[e] = e;
  return id;
}

Homomorphism compose(const Homomorphism& first, const Homomorphism& second) {
  Homomorphism out;
  for (const auto& [a, b] : first.targets) {
    if (auto it = second.targets.find(b); it != second.targets.end()) out.targets[a] = it->second;
  }
  for (const auto& [a, b] : first.sources) {
    if (auto it = second.sources.find(b); it != second.sources.end()) out.sources[a] = it->second;
  }
  for (const auto& [a, b] : first.edges) {
    if (auto it = second.edges.find(b); it != second.edges.end()) out.edges[a] = it->second;
  }
  return out;
}

bool is_homomorphism(const Homomorphism& h, const LinearHypergraph& from, const LinearHypergraph& to) {
  std::unordered_set<VertexId> to_t(to.targets.begin(), to.targets.end());
  std::unordered_set<VertexId> to_s(to.sources.begin(), to.sources.end());
  std::unordered_set<EdgeId> to_e(to.edges.begin(), to.edges.end());
  for (VertexId t : from.targets) {
    const VertexId* x = lookup(h.targets, t);
    if (!x || !to_t.count(*x)) return false;
    if (to.target_label(*x) != from.target_label(t)) return false;
  }
  for (VertexId s : from.sources) {
    const VertexId* x = lookup(h.sources, s);
    if (!x || !to_s.count(*x)) return false;
    if (to.source_label(*x) != from.source_label(s)) return false;
  }
  for (EdgeId e : from.edges) {
    const EdgeId* x = lookup(h.edges, e);
    if (!x || !to_e.count(*x)) return false;
    if (from.labels.at(e) != to.labels.at(*x)) return false;
  }
  for (VertexId t : from.targets) {
    if (to.conn.at(h.targets.at(t)) != h.sources.at(from.conn.at(t))) return false;
  }
  Incidence fi(from);
  Incidence ti(to);
  for (EdgeId e : from.edges) {
    EdgeId x = h.edges.at(e);
    const auto& fs = fi.edge_sources.at(e);
    const auto& xs = ti.edge_sources.at(x);
    if (fs.size() != xs.size()) return false;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (h.sources.at(fs[i]) != xs[i]) return false;
    }
    const auto& ft = fi.edge_targets.at(e);
    const auto& xt = ti.edge_targets.at(x);
    if (ft.size() != xt.size()) return false;
    for (std::size_t i = 0; i < ft.size(); ++i) {
      if (h.targets.at(ft[i]) != xt[i]) return false;
    }
  }
  return true;
}

namespace {

template <class K>
bool injective_on(const std::unordered_map<K, K>& m) {
  std::unordered_set<K> seen;
  for (const auto& [a, b] : m) {
    if (!seen.insert(b).second) return false;
  }
  return true;
}

}  // namespace

bool is_embedding(const Homomorphism& h, const LinearHypergraph& from, const LinearHypergraph& to) {
  return is_homomorphism(h, from, to) && injective_on(h.targets) && injective_on(h.sources) &&
         injective_on(h.edges);
}

bool is_isomorphism(const Homomorphism& h, const LinearHypergraph& from, const LinearHypergraph& to) {
  if (from.targets.size() != to.targets.size() || from.sources.size() != to.sources.size() ||
      from.edges.size() != to.edges.size()) {
    return false;
  }
  if (h.targets.size() != from.targets.size() || h.sources.size() != from.sources.size() ||
      h.edges.size() != from.edges.size()) {
    return false;
  }
  if (!is_embedding(h, from, to)) return false;
  auto fin = from.inputs();
  auto tin = to.inputs();
  auto fout = from.outputs();
  auto tout = to.outputs();
  if (fin.size() != tin.size() || fout.size() != tout.size()) return false;
  for (std::size_t i = 0; i < fin.size(); ++i) {
    if (h.targets.at(fin[i]) != tin[i]) return false;
  }
  for (std::size_t i = 0; i < fout.size(); ++i) {
    if (h.sources.at(fout[i]) != tout[i]) return false;
  }
  return true;
}

std::optional<Homomorphism> inverse(const Homomorphism& h) {
  Homomorphism inv;
  for (const auto& [a, b] : h.targets) {
    if (!inv.targets.emplace(b, a).second) return std::nullopt;
  }
  for (const auto& [a, b] : h.sources) {
    if (!inv.sources.emplace(b, a).second) return std::nullopt;
  }
  for (const auto& [a, b] : h.edges) {
    if (!inv.edges.emplace(b, a).second) return std::nullopt;
  }
  return inv;
}

namespace {

// Partial isomorphism under construction. Every assignment propagates along
// connections and edge ports, so most of the map is forced by the interface.
class IsoSearch {
 public:
  IsoSearch(const LinearHypergraph& f, const LinearHypergraph& g) : f_(f), g_(g), fi_(f), gi_(g) {}

  std::optional<Homomorphism> run() {
    State st;
    if (fi_.inputs.size() != gi_.inputs.size() || fi_.outputs.size() != gi_.outputs.size()) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < fi_.inputs.size(); ++i) {
      if (!assign_target(st, fi_.inputs[i], gi_.inputs[i])) return std::nullopt;
    }
    for (std::size_t i = 0; i < fi_.outputs.size(); ++i) {
      if (!assign_source(st, fi_.outputs[i], gi_.outputs[i])) return std::nullopt;
    }
    if (!search(st)) return std::nullopt;
    Homomorphism h{std::move(found_.tmap), std::move(found_.smap), std::move(found_.emap)};
    if (!is_isomorphism(h, f_, g_)) return std::nullopt;
    return h;
  }

 private:
  struct State {
    std::unordered_map<VertexId, VertexId> tmap, smap;
    std::unordered_map<EdgeId, EdgeId> emap;
    std::unordered_set<VertexId> tused, sused;
    std::unordered_set<EdgeId> eused;
  };

  bool assign_edge(State& st, EdgeId e, EdgeId x) {
    if (auto it = st.emap.find(e); it != st.emap.end()) return it->second == x;
    if (st.eused.count(x)) return false;
    if (f_.labels.at(e) != g_.labels.at(x)) return false;
    const auto& fs = fi_.edge_sources.at(e);
    const auto& xs = gi_.edge_sources.at(x);
    const auto& ft = fi_.edge_targets.at(e);
    const auto& xt = gi_.edge_targets.at(x);
    if (fs.size() != xs.size() || ft.size() != xt.size()) return false;
    st.emap[e] = x;
    st.eused.insert(x);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!assign_source(st, fs[i], xs[i])) return false;
    }
    for (std::size_t i = 0; i < ft.size(); ++i) {
      if (!assign_target(st, ft[i], xt[i])) return false;
    }
    return true;
  }

  bool compatible(const Incidence::Port& a, const Incidence::Port& b) const {
    return a.edge.has_value() == b.edge.has_value() && a.index == b.index;
  }

  bool assign_target(State& st, VertexId t, VertexId x) {
    if (auto it = st.tmap.find(t); it != st.tmap.end()) return it->second == x;
    if (st.tused.count(x)) return false;
    const auto& pt = fi_.target_port.at(t);
    const auto& px = gi_.target_port.at(x);
    if (!compatible(pt, px) || f_.target_label(t) != g_.target_label(x)) return false;
    st.tmap[t] = x;
    st.tused.insert(x);
    if (pt.edge && !assign_edge(st, *pt.edge, *px.edge)) return false;
    return assign_source(st, f_.conn.at(t), g_.conn.at(x));
  }

  bool assign_source(State& st, VertexId s, VertexId x) {
    if (auto it = st.smap.find(s); it != st.smap.end()) return it->second == x;
    if (st.sused.count(x)) return false;
    const auto& ps = fi_.source_port.at(s);
    const auto& px = gi_.source_port.at(x);
    if (!compatible(ps, px) || f_.source_label(s) != g_.source_label(x)) return false;
    st.smap[s] = x;
    st.sused.insert(x);
    if (ps.edge && !assign_edge(st, *ps.edge, *px.edge)) return false;
    return assign_target(st, fi_.conn_inverse.at(s), gi_.conn_inverse.at(x));
  }

  bool search(State& st) {
    const EdgeId* pending = nullptr;
    for (const EdgeId& e : f_.edges) {
      if (!st.emap.count(e)) {
        pending = &e;
        break;
      }
    }
    if (!pending) {
      if (st.tmap.size() != f_.targets.size() || st.smap.size() != f_.sources.size()) return false;
      found_ = std::move(st);
      return true;
    }
    const std::string& label = f_.labels.at(*pending);
    for (EdgeId x : g_.edges) {
      if (st.eused.count(x) || g_.labels.at(x) != label) continue;
      State next = st;
      if (assign_edge(next, *pending, x) && search(next)) return true;
    }
    return false;
  }

  const LinearHypergraph& f_;
  const LinearHypergraph& g_;
  Incidence fi_;
  Incidence gi_;
  State found_;
};

bool same_label_multiset(const LinearHypergraph& f, const LinearHypergraph& g) {
  std::map<std::string, long> count;
  for (EdgeId e : f.edges) ++count[f.labels.at(e)];
  for (EdgeId e : g.edges) --count[g.labels.at(e)];
  return std::all_of(count.begin(), count.end(), [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

std::optional<Homomorphism> find_isomorphism(const LinearHypergraph& f, const LinearHypergraph& g) {
  if (f.targets.size() != g.targets.size() || f.sources.size() != g.sources.size() ||
      f.edges.size() != g.edges.size() || !same_label_multiset(f, g)) {
    return std::nullopt;
  }
  return IsoSearch(f, g).run();
}

bool isomorphic(const LinearHypergraph& f, const LinearHypergraph& g) {
  return find_isomorphism(f, g).has_value();
}

std::vector<std::uint64_t> atoms(const LinearHypergraph& h) {
  std::vector<std::uint64_t> out;
  out.reserve(h.targets.size() + h.sources.size() + h.edges.size());
  for (VertexId v : h.targets) out.push_back(v.value);
  for (VertexId v : h.sources) out.push_back(v.value);
  for (EdgeId e : h.edges) out.push_back(e.value);
  return out;
}

bool shares_atoms(const LinearHypergraph& a, const LinearHypergraph& b) {
  auto av = atoms(a);
  std::unordered_set<std::uint64_t> set(av.begin(), av.end());
  for (std::uint64_t x : atoms(b)) {
    if (set.count(x)) return true;
  }
  return false;
}

LinearHypergraph rename(const LinearHypergraph& h, const std::unordered_map<std::uint64_t, std::uint64_t>& pi) {
  auto image = [&](std::uint64_t x) {
    auto it = pi.find(x);
    return it == pi.end() ? x : it->second;
  };
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t x : atoms(h)) {
    if (!seen.insert(image(x)).second) {
      throw Error("renaming is not injective on the graph (atom " + id_text(x) + ")");
    }
  }
  auto v = [&](VertexId x) { return VertexId{image(x.value)}; };
  auto e = [&](EdgeId x) { return EdgeId{image(x.value)}; };
  auto att = [&](const Attachment& a) { return a ? Attachment(e(*a)) : Attachment(); };
  LinearHypergraph out;
  for (VertexId t : h.targets) out.targets.push_back(v(t));
  for (VertexId s : h.sources) out.sources.push_back(v(s));
  for (EdgeId x : h.edges) out.edges.push_back(e(x));
  for (const auto& [k, a] : h.left) out.left[v(k)] = att(a);
  for (const auto& [k, a] : h.right) out.right[v(k)] = att(a);
  for (const auto& [k, s] : h.conn) out.conn[v(k)] = v(s);
  for (const auto& [k, l] : h.labels) out.labels[e(k)] = l;
  for (const auto& [k, l] : h.vtlabels) out.vtlabels[v(k)] = l;
  for (const auto& [k, l] : h.vslabels) out.vslabels[v(k)] = l;
  return out;
}

LinearHypergraph freshen(const LinearHypergraph& h, std::unordered_map<std::uint64_t, std::uint64_t>& pi) {
  pi.clear();
  for (std::uint64_t x : atoms(h)) pi[x] = fresh_atom();
  return rename(h, pi);
}

LinearHypergraph freshen(const LinearHypergraph& h) {
  std::unordered_map<std::uint64_t, std::uint64_t> pi;
  return freshen(h, pi);
}

LinearHypergraph canonical(const LinearHypergraph& h) {
  Incidence inc(h);
  std::unordered_map<std::uint64_t, std::uint64_t> pi;
  std::uint64_t counter = 0;
  auto number = [&](std::uint64_t x) {
    if (!pi.count(x)) pi[x] = counter++;
  };
  for (VertexId t : inc.inputs) number(t.value);
  for (VertexId s : inc.outputs) number(s.value);

  std::unordered_set<EdgeId> visited;
  std::vector<EdgeId> edge_order;
  std::deque<VertexId> wires;  // identified by their target
  auto visit_edge = [&](EdgeId e) {
    if (!visited.insert(e).second) return;
    number(e.value);
    edge_order.push_back(e);
    for (VertexId s : inc.edge_sources.at(e)) {
      number(s.value);
      wires.push_back(inc.conn_inverse.at(s));
    }
    for (VertexId t : inc.edge_targets.at(e)) {
      number(t.value);
      wires.push_back(t);
    }
  };
  auto drain = [&]() {
    while (!wires.empty()) {
      VertexId t = wires.front();
      wires.pop_front();
      VertexId s = h.conn.at(t);
      if (auto e = inc.target_port.at(t).edge) visit_edge(*e);
      if (auto e = inc.source_port.at(s).edge) visit_edge(*e);
    }
  };
  for (VertexId t : inc.inputs) wires.push_back(t);
  for (VertexId s : inc.outputs) wires.push_back(inc.conn_inverse.at(s));
  drain();
  for (EdgeId e : h.edges) {
    if (visited.count(e)) continue;
    visit_edge(e);
    drain();
  }

  LinearHypergraph out = rename(h, pi);
  auto by_id = [](auto a, auto b) { return a.value < b.value; };
  std::sort(out.targets.begin(), out.targets.end(), by_id);
  std::sort(out.sources.begin(), out.sources.end(), by_id);
  std::sort(out.edges.begin(), out.edges.end(), by_id);
  return out;
}

LinearHypergraph smooth(const LinearHypergraph& h) {
  bool any = std::any_of(h.edges.begin(), h.edges.end(), [&](EdgeId e) { return h.is_identity_edge(e); });
  if (!any) return h;
  Incidence inc(h);
  LinearHypergraph out = h;
  std::unordered_map<VertexId, VertexId> conn_inv = inc.conn_inverse;
  std::unordered_set<VertexId> dropped_vertices;
  std::unordered_set<EdgeId> dropped_edges;
  for (EdgeId e : h.edges) {
    if (!h.is_identity_edge(e)) continue;
    VertexId s = inc.edge_sources.at(e).at(0);
    VertexId t = inc.edge_targets.at(e).at(0);
    VertexId v = conn_inv.at(s);
    VertexId w = out.conn.at(t);
    if (v != t) {
      out.conn[v] = w;
      conn_inv[w] = v;
    }
    out.conn.erase(t);
    conn_inv.erase(s);
    dropped_vertices.insert(s);
    dropped_vertices.insert(t);
    dropped_edges.insert(e);
  }
  auto keep_v = [&](VertexId x) { return !dropped_vertices.count(x); };
  std::erase_if(out.targets, [&](VertexId x) { return !keep_v(x); });
  std::erase_if(out.sources, [&](VertexId x) { return !keep_v(x); });
  std::erase_if(out.edges, [&](EdgeId x) { return dropped_edges.count(x) > 0; });
  for (VertexId x : dropped_vertices) {
    out.left.erase(x);
    out.right.erase(x);
    out.vtlabels.erase(x);
    out.vslabels.erase(x);
  }
  for (EdgeId x : dropped_edges) out.labels.erase(x);
  return out;
}

LinearHypergraph expand(const LinearHypergraph& h, VertexId w, EdgeId& inserted) {
  auto it = h.conn.find(w);
  if (it == h.conn.end()) throw Error("expand: " + id_text(w.value) + " is not a target");
  LinearHypergraph out = h;
  VertexId s_old = it->second;
  EdgeId e = fresh_edge();
  VertexId s_new = fresh_vertex();
  VertexId t_new = fresh_vertex();
  out.edges.push_back(e);
  out.labels[e] = std::string(kIdentityLabel);
  out.sources.push_back(s_new);
  out.targets.push_back(t_new);
  out.right[s_new] = e;
  out.left[t_new] = e;
  out.conn[w] = s_new;
  out.conn[t_new] = s_old;
  const std::string& label = h.target_label(w);
  if (!label.empty()) {
    out.vslabels[s_new] = label;
    out.vtlabels[t_new] = label;
  }
  inserted = e;
  return out;
}

LinearHypergraph expand(const LinearHypergraph& h, VertexId w) {
  EdgeId ignored;
  return expand(h, w, ignored);
}

SimpleHypergraph to_simple(const LinearHypergraph& h) {
  Incidence inc(h);
  SimpleHypergraph out;
  out.vertices = h.sources;
  out.edges = h.edges;
  for (EdgeId e : h.edges) {
    out.src[e] = inc.edge_sources.at(e);
    std::vector<VertexId> tgt;
    for (VertexId t : inc.edge_targets.at(e)) tgt.push_back(h.conn.at(t));
    out.tgt[e] = std::move(tgt);
    out.labels[e] = h.labels.at(e);
  }
  for (VertexId t : inc.inputs) out.inputs.push_back(h.conn.at(t));
  out.outputs = inc.outputs;
  return out;
}

bool is_linear(const SimpleHypergraph& h) {
  std::unordered_map<VertexId, int> produced, consumed;
  for (VertexId v : h.vertices) {
    produced[v] = 0;
    consumed[v] = 0;
  }
  for (EdgeId e : h.edges) {
    for (VertexId v : h.tgt.at(e)) ++produced[v];
    for (VertexId v : h.src.at(e)) ++consumed[v];
  }
  for (VertexId v : h.inputs) ++produced[v];
  for (VertexId v : h.outputs) ++consumed[v];
  if (produced.size() != h.vertices.size() || consumed.size() != h.vertices.size()) return false;
  for (const auto& [v, n] : produced) {
    if (n != 1 || consumed.at(v) != 1) return false;
  }
  return true;
}

SimpleHomomorphism to_simple(const Homomorphism& h) { return {h.sources, h.edges}; }

bool is_simple_homomorphism(const SimpleHomomorphism& h, const SimpleHypergraph& from,
                            const SimpleHypergraph& to) {
  std::unordered_set<VertexId> tv(to.vertices.begin(), to.vertices.end());
  std::unordered_set<EdgeId> te(to.edges.begin(), to.edges.end());
  for (VertexId v : from.vertices) {
    const VertexId* x = lookup(h.vertices, v);
    if (!x || !tv.count(*x)) return false;
  }
  for (EdgeId e : from.edges) {
    const EdgeId* x = lookup(h.edges, e);
    if (!x || !te.count(*x)) return false;
    if (from.labels.at(e) != to.labels.at(*x)) return false;
    auto mapped = [&](const std::vector<VertexId>& vs) {
      std::vector<VertexId> out;
      for (VertexId v : vs) out.push_back(h.vertices.at(v));
      return out;
    };
    if (mapped(from.src.at(e)) != to.src.at(*x) || mapped(from.tgt.at(e)) != to.tgt.at(*x)) return false;
  }
  return true;
}

}  // namespace lhg
