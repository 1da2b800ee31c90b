#include "lhg/rewrite.hpp"

#include <deque>
#include <map>
#include <unordered_set>

#include "lexer.hpp"
#include "lhg/error.hpp"
#include "lhg/interp.hpp"
#include "lhg/ops.hpp"

namespace lhg {

namespace {

std::string vertex_text(VertexId v) { return std::to_string(v.value); }

// The leg sending the i-th interface wire to the i-th input wire of x, and
// wire dom+j to the j-th output wire.
Homomorphism interface_leg(const LinearHypergraph& k, std::size_t inputs, const LinearHypergraph& x) {
  Incidence inc(x);
  Homomorphism h;
  for (std::size_t i = 0; i < k.targets.size(); ++i) {
    VertexId kt = k.targets[i];
    VertexId ks = k.conn.at(kt);
    if (i < inputs) {
      VertexId t = inc.inputs.at(i);
      h.targets[kt] = t;
      h.sources[ks] = x.conn.at(t);
    } else {
      VertexId s = inc.outputs.at(i - inputs);
      h.sources[ks] = s;
      h.targets[kt] = inc.conn_inverse.at(s);
    }
  }
  return h;
}

// Expands every wire running straight from an input to an output.
LinearHypergraph expand_bare_wires(const LinearHypergraph& x, bool& changed) {
  LinearHypergraph out = x;
  changed = false;
  for (VertexId t : x.inputs()) {
    if (!x.right.at(x.conn.at(t)).has_value()) {
      out = expand(out, t);
      changed = true;
    }
  }
  return out;
}

bool is_input(const LinearHypergraph& h, VertexId t) {
  auto it = h.left.find(t);
  return it != h.left.end() && !it->second.has_value();
}

bool is_output(const LinearHypergraph& h, VertexId s) {
  auto it = h.right.find(s);
  return it != h.right.end() && !it->second.has_value();
}

}  // namespace

RewriteRule rule_from_graphs(std::string name, const LinearHypergraph& lhs, const LinearHypergraph& rhs) {
  Word dom = lhs.dom();
  Word cod = lhs.cod();
  if (dom != rhs.dom() || cod != rhs.cod()) {
    throw TypeError("rule '" + name + "' has sides of different types: " + render_word(dom) + " -> " +
                    render_word(cod) + " and " + render_word(rhs.dom()) + " -> " + render_word(rhs.cod()));
  }
  RewriteRule rule;
  rule.name = std::move(name);
  rule.lhs = lhs;
  rule.rhs = shares_atoms(lhs, rhs) ? freshen(rhs) : rhs;
  rule.interface = identity(concat(dom, cod));
  rule.left_leg = interface_leg(rule.interface, dom.size(), rule.lhs);
  rule.right_leg = interface_leg(rule.interface, dom.size(), rule.rhs);
  return saturate_rule(rule);
}

RewriteRule rule_from_terms(std::string name, const Term& lhs, const Term& rhs, const Signature& sig) {
  TermType tl = type_of(lhs, sig);
  TermType tr = type_of(rhs, sig);
  if (tl != tr) {
    throw TypeError("rule '" + name + "' has sides of different types: " + render_word(tl.dom) + " -> " +
                    render_word(tl.cod) + " and " + render_word(tr.dom) + " -> " + render_word(tr.cod));
  }
  return rule_from_graphs(std::move(name), interpret(lhs, sig), interpret(rhs, sig));
}

RewriteRule saturate_rule(const RewriteRule& rule) {
  RewriteRule out = rule;
  std::size_t inputs = rule.lhs.inputs().size();
  bool changed = false;
  out.lhs = expand_bare_wires(rule.lhs, changed);
  if (changed) out.left_leg = interface_leg(out.interface, inputs, out.lhs);
  out.rhs = expand_bare_wires(rule.rhs, changed);
  if (changed) out.right_leg = interface_leg(out.interface, inputs, out.rhs);
  return out;
}

bool legs_are_embeddings(const RewriteRule& rule) {
  return is_embedding(rule.left_leg, rule.interface, rule.lhs) &&
         is_embedding(rule.right_leg, rule.interface, rule.rhs);
}

bool boundary_coherent(const LinearHypergraph& f, const Homomorphism& m, const LinearHypergraph& g,
                       const Homomorphism& n, const LinearHypergraph& h) {
  for (VertexId t : f.inputs()) {
    if (!is_input(g, m.targets.at(t)) && !is_input(h, n.targets.at(t))) return false;
  }
  for (VertexId s : f.outputs()) {
    if (!is_output(g, m.sources.at(s)) && !is_output(h, n.sources.at(s))) return false;
  }
  return true;
}

PushoutResult pushout(const LinearHypergraph& k, const LinearHypergraph& c, const Homomorphism& m,
                      const LinearHypergraph& r, const Homomorphism& n) {
  if (!is_embedding(m, k, c) || !is_embedding(n, k, r)) {
    throw RewriteError("pushout needs two embeddings");
  }
  std::unordered_map<VertexId, VertexId> n_inv_t, n_inv_s;
  std::unordered_map<EdgeId, EdgeId> n_inv_e;
  for (const auto& [a, b] : n.targets) n_inv_t[b] = a;
  for (const auto& [a, b] : n.sources) n_inv_s[b] = a;
  for (const auto& [a, b] : n.edges) n_inv_e[b] = a;

  std::unordered_set<std::uint64_t> taken;
  for (std::uint64_t x : atoms(c)) taken.insert(x);
  std::unordered_map<std::uint64_t, std::uint64_t> rn;
  auto fresh_for = [&](std::uint64_t x) {
    std::uint64_t y = taken.count(x) ? fresh_atom() : x;
    taken.insert(y);
    rn[x] = y;
  };
  for (VertexId t : r.targets) if (!n_inv_t.count(t)) fresh_for(t.value);
  for (VertexId s : r.sources) if (!n_inv_s.count(s)) fresh_for(s.value);
  for (EdgeId e : r.edges) if (!n_inv_e.count(e)) fresh_for(e.value);

  auto edge_image = [&](EdgeId e) {
    auto it = n_inv_e.find(e);
    return it != n_inv_e.end() ? m.edges.at(it->second) : EdgeId{rn.at(e.value)};
  };
  auto attach_image = [&](const Attachment& a) { return a ? Attachment(edge_image(*a)) : Attachment(); };
  auto target_image = [&](VertexId t) {
    auto it = n_inv_t.find(t);
    return it != n_inv_t.end() ? m.targets.at(it->second) : VertexId{rn.at(t.value)};
  };
  auto source_image = [&](VertexId s) {
    auto it = n_inv_s.find(s);
    return it != n_inv_s.end() ? m.sources.at(it->second) : VertexId{rn.at(s.value)};
  };

  PushoutResult out;
  LinearHypergraph& h = out.graph;
  h = c;
  for (VertexId kt : k.targets) {
    VertexId ct = m.targets.at(kt);
    const Attachment& lc = c.left.at(ct);
    const Attachment& lr = r.left.at(n.targets.at(kt));
    if (lc && lr && !k.left.at(kt)) {
      throw RewriteError("not boundary coherent at target " + vertex_text(ct) +
                         ": both sides attach it to an edge");
    }
    if (!lc && lr) h.left[ct] = attach_image(lr);
  }
  for (VertexId ks : k.sources) {
    VertexId cs = m.sources.at(ks);
    const Attachment& rc = c.right.at(cs);
    const Attachment& rr = r.right.at(n.sources.at(ks));
    if (rc && rr && !k.right.at(ks)) {
      throw RewriteError("not boundary coherent at source " + vertex_text(cs) +
                         ": both sides attach it to an edge");
    }
    if (!rc && rr) h.right[cs] = attach_image(rr);
  }
  // Ports are positional, so every port of a new edge is placed after the
  // context's vertices in the order it has in r, glued or not.
  auto on_new_edge = [&](const Attachment& a) { return a && !n_inv_e.count(*a); };
  std::unordered_set<VertexId> moved;
  for (VertexId t : r.targets) {
    if (on_new_edge(r.left.at(t))) moved.insert(target_image(t));
  }
  for (VertexId s : r.sources) {
    if (on_new_edge(r.right.at(s))) moved.insert(source_image(s));
  }
  std::erase_if(h.targets, [&](VertexId v) { return moved.count(v) > 0; });
  std::erase_if(h.sources, [&](VertexId v) { return moved.count(v) > 0; });
  for (VertexId t : r.targets) {
    VertexId x = target_image(t);
    if (n_inv_t.count(t)) {
      if (moved.count(x)) h.targets.push_back(x);
      continue;
    }
    h.targets.push_back(x);
    h.left[x] = attach_image(r.left.at(t));
    h.conn[x] = source_image(r.conn.at(t));
    if (const auto& l = r.target_label(t); !l.empty()) h.vtlabels[x] = l;
  }
  for (VertexId s : r.sources) {
    VertexId x = source_image(s);
    if (n_inv_s.count(s)) {
      if (moved.count(x)) h.sources.push_back(x);
      continue;
    }
    h.sources.push_back(x);
    h.right[x] = attach_image(r.right.at(s));
    if (const auto& l = r.source_label(s); !l.empty()) h.vslabels[x] = l;
  }
  for (EdgeId e : r.edges) {
    if (n_inv_e.count(e)) continue;
    EdgeId x = edge_image(e);
    h.edges.push_back(x);
    h.labels[x] = r.labels.at(e);
  }
  out.from_left = identity_homomorphism(c);
  for (VertexId t : r.targets) out.from_right.targets[t] = target_image(t);
  for (VertexId s : r.sources) out.from_right.sources[s] = source_image(s);
  for (EdgeId e : r.edges) out.from_right.edges[e] = edge_image(e);
  return out;
}

ComplementResult pushout_complement(const LinearHypergraph& k, const LinearHypergraph& l, const Homomorphism& leg,
                                    const LinearHypergraph& g, const Homomorphism& match) {
  if (!is_embedding(leg, k, l) || !is_embedding(match, l, g)) {
    throw RewriteError("pushout complement needs two embeddings");
  }
  Homomorphism km = compose(leg, match);
  std::unordered_set<VertexId> removed_v;
  std::unordered_set<EdgeId> removed_e;
  for (const auto& [a, b] : match.targets) removed_v.insert(b);
  for (const auto& [a, b] : match.sources) removed_v.insert(b);
  for (const auto& [a, b] : match.edges) removed_e.insert(b);
  for (const auto& [a, b] : km.targets) removed_v.erase(b);
  for (const auto& [a, b] : km.sources) removed_v.erase(b);
  for (const auto& [a, b] : km.edges) removed_e.erase(b);

  ComplementResult out;
  LinearHypergraph& c = out.context;
  auto keep_attachment = [&](const Attachment& a) {
    return a && removed_e.count(*a) ? Attachment() : a;
  };
  for (VertexId t : g.targets) {
    if (removed_v.count(t)) continue;
    c.targets.push_back(t);
    c.left[t] = keep_attachment(g.left.at(t));
    c.conn[t] = g.conn.at(t);
    if (const auto& lab = g.target_label(t); !lab.empty()) c.vtlabels[t] = lab;
  }
  for (VertexId s : g.sources) {
    if (removed_v.count(s)) continue;
    c.sources.push_back(s);
    c.right[s] = keep_attachment(g.right.at(s));
    if (const auto& lab = g.source_label(s); !lab.empty()) c.vslabels[s] = lab;
  }
  for (EdgeId e : g.edges) {
    if (removed_e.count(e)) continue;
    c.edges.push_back(e);
    c.labels[e] = g.labels.at(e);
  }
  out.interface_to_context = km;
  out.context_to_host = identity_homomorphism(c);
  return out;
}

SimpleHypergraph simple_pushout(const SimpleHypergraph& k, const SimpleHypergraph& c, const SimpleHomomorphism& m,
                                const SimpleHypergraph& r, const SimpleHomomorphism& n) {
  std::unordered_map<VertexId, VertexId> n_inv_v;
  std::unordered_map<EdgeId, EdgeId> n_inv_e;
  for (const auto& [a, b] : n.vertices) n_inv_v[b] = a;
  for (const auto& [a, b] : n.edges) n_inv_e[b] = a;
  std::unordered_set<std::uint64_t> taken;
  for (VertexId v : c.vertices) taken.insert(v.value);
  for (EdgeId e : c.edges) taken.insert(e.value);
  std::unordered_map<std::uint64_t, std::uint64_t> rn;
  auto fresh_for = [&](std::uint64_t x) {
    std::uint64_t y = taken.count(x) ? fresh_atom() : x;
    taken.insert(y);
    rn[x] = y;
  };
  for (VertexId v : r.vertices) if (!n_inv_v.count(v)) fresh_for(v.value);
  for (EdgeId e : r.edges) if (!n_inv_e.count(e)) fresh_for(e.value);
  auto v_image = [&](VertexId v) {
    auto it = n_inv_v.find(v);
    return it != n_inv_v.end() ? m.vertices.at(it->second) : VertexId{rn.at(v.value)};
  };
  auto e_image = [&](EdgeId e) {
    auto it = n_inv_e.find(e);
    return it != n_inv_e.end() ? m.edges.at(it->second) : EdgeId{rn.at(e.value)};
  };

  SimpleHypergraph h;
  h.vertices = c.vertices;
  h.edges = c.edges;
  h.src = c.src;
  h.tgt = c.tgt;
  h.labels = c.labels;
  for (VertexId v : r.vertices) if (!n_inv_v.count(v)) h.vertices.push_back(v_image(v));
  for (EdgeId e : r.edges) {
    if (n_inv_e.count(e)) continue;
    EdgeId x = e_image(e);
    h.edges.push_back(x);
    h.labels[x] = r.labels.at(e);
    for (VertexId v : r.src.at(e)) h.src[x].push_back(v_image(v));
    for (VertexId v : r.tgt.at(e)) h.tgt[x].push_back(v_image(v));
  }
  std::unordered_set<VertexId> k_vertices(k.vertices.begin(), k.vertices.end());
  std::unordered_map<VertexId, VertexId> m_inv;
  for (const auto& [a, b] : m.vertices) m_inv[b] = a;
  auto merge_boundary = [&](const std::vector<VertexId>& cb, const std::vector<VertexId>& rb) {
    std::unordered_set<VertexId> in_r(rb.begin(), rb.end());
    std::vector<VertexId> out;
    for (VertexId v : cb) {
      auto it = m_inv.find(v);
      if (it == m_inv.end() || in_r.count(n.vertices.at(it->second))) out.push_back(v);
    }
    for (VertexId v : rb) {
      if (!n_inv_v.count(v)) out.push_back(v_image(v));
    }
    return out;
  };
  h.inputs = merge_boundary(c.inputs, r.inputs);
  h.outputs = merge_boundary(c.outputs, r.outputs);
  return h;
}

namespace {

// Host-side data shared by every search over the same graph.
struct HostView {
  explicit HostView(const LinearHypergraph& host) : g(host), inc(host) {
    for (EdgeId e : host.edges) by_label[host.labels.at(e)].push_back(e);
  }
  const std::vector<EdgeId>& edges_labelled(const std::string& label) const {
    static const std::vector<EdgeId> none;
    auto it = by_label.find(label);
    return it == by_label.end() ? none : it->second;
  }
  const LinearHypergraph& g;
  Incidence inc;
  std::unordered_map<std::string, std::vector<EdgeId>> by_label;
};

// Backtracking search for embeddings. In plain mode every vertex of l is
// mapped injectively. In boundary mode only edges and their ports are
// mapped, interface wires of l are left to identity edges inserted later,
// and bare wires choose distinct host wires away from matched internal
// wires.
class MatchSearch {
 public:
  struct State {
    std::unordered_map<VertexId, VertexId> tmap, smap;
    std::unordered_map<EdgeId, EdgeId> emap;
    std::unordered_set<VertexId> tused, sused;
    std::unordered_set<EdgeId> eused;
    std::unordered_set<VertexId> internal;  // host targets of matched internal wires
    std::vector<VertexId> bare;
  };
  using Visit = std::function<bool(const State&)>;

  MatchSearch(const LinearHypergraph& l, const HostView& host, bool boundary_mode)
      : l_(l), g_(host.g), host_(host), li_(l), gi_(host.inc), boundary_(boundary_mode) {
    std::unordered_set<EdgeId> seen;
    for (EdgeId root : l.edges) {
      if (seen.count(root)) continue;
      std::deque<EdgeId> queue{root};
      seen.insert(root);
      while (!queue.empty()) {
        EdgeId e = queue.front();
        queue.pop_front();
        order_.push_back(e);
        auto push = [&](Attachment a) {
          if (a && seen.insert(*a).second) queue.push_back(*a);
        };
        for (VertexId s : li_.edge_sources.at(e)) push(li_.target_port.at(li_.conn_inverse.at(s)).edge);
        for (VertexId t : li_.edge_targets.at(e)) push(li_.source_port.at(l.conn.at(t)).edge);
      }
    }
    for (VertexId t : li_.inputs) {
      if (!li_.source_port.at(l.conn.at(t)).edge) bare_.push_back(t);
    }
  }

  void run(const Visit& visit) {
    visit_ = &visit;
    State st;
    stopped_ = false;
    step(st, 0);
  }

 private:
  bool is_edge_port_t(VertexId t) const { return li_.target_port.at(t).edge.has_value(); }
  bool is_edge_port_s(VertexId s) const { return li_.source_port.at(s).edge.has_value(); }

  bool assign_edge(State& st, EdgeId e, EdgeId x) {
    if (auto it = st.emap.find(e); it != st.emap.end()) return it->second == x;
    if (st.eused.count(x) || l_.labels.at(e) != g_.labels.at(x)) return false;
    const auto& ls = li_.edge_sources.at(e);
    const auto& gs = gi_.edge_sources.at(x);
    const auto& lt = li_.edge_targets.at(e);
    const auto& gt = gi_.edge_targets.at(x);
    if (ls.size() != gs.size() || lt.size() != gt.size()) return false;
    st.emap[e] = x;
    st.eused.insert(x);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (!assign_source(st, ls[i], gs[i])) return false;
    }
    for (std::size_t i = 0; i < lt.size(); ++i) {
      if (!assign_target(st, lt[i], gt[i])) return false;
    }
    return true;
  }

  bool assign_target(State& st, VertexId t, VertexId y) {
    if (auto it = st.tmap.find(t); it != st.tmap.end()) return it->second == y;
    if (st.tused.count(y) || l_.target_label(t) != g_.target_label(y)) return false;
    st.tmap[t] = y;
    st.tused.insert(y);
    VertexId s = l_.conn.at(t);
    if (auto it = st.smap.find(s); it != st.smap.end()) {
      if (g_.conn.at(y) != it->second) return false;
      if (is_edge_port_t(t) && is_edge_port_s(s)) st.internal.insert(y);
      return true;
    }
    if (!boundary_ && !is_edge_port_s(s)) return assign_source(st, s, g_.conn.at(y));
    return true;
  }

  bool assign_source(State& st, VertexId s, VertexId z) {
    if (auto it = st.smap.find(s); it != st.smap.end()) return it->second == z;
    if (st.sused.count(z) || l_.source_label(s) != g_.source_label(z)) return false;
    st.smap[s] = z;
    st.sused.insert(z);
    VertexId t = li_.conn_inverse.at(s);
    if (auto it = st.tmap.find(t); it != st.tmap.end()) {
      if (g_.conn.at(it->second) != z) return false;
      if (is_edge_port_t(t) && is_edge_port_s(s)) st.internal.insert(it->second);
      return true;
    }
    if (!boundary_ && !is_edge_port_t(t)) return assign_target(st, t, gi_.conn_inverse.at(z));
    return true;
  }

  // A host edge forced by an already matched neighbour, if any.
  std::optional<EdgeId> forced(const State& st, EdgeId e) const {
    for (VertexId s : li_.edge_sources.at(e)) {
      VertexId t = li_.conn_inverse.at(s);
      if (!is_edge_port_t(t) && boundary_) continue;
      if (auto it = st.tmap.find(t); it != st.tmap.end()) {
        auto port = gi_.source_port.at(g_.conn.at(it->second));
        return port.edge ? port.edge : std::optional<EdgeId>(EdgeId{0});
      }
    }
    for (VertexId t : li_.edge_targets.at(e)) {
      VertexId s = l_.conn.at(t);
      if (!is_edge_port_s(s) && boundary_) continue;
      if (auto it = st.smap.find(s); it != st.smap.end()) {
        auto port = gi_.target_port.at(gi_.conn_inverse.at(it->second));
        return port.edge ? port.edge : std::optional<EdgeId>(EdgeId{0});
      }
    }
    return std::nullopt;
  }

  void step(State& st, std::size_t idx) {
    if (stopped_) return;
    if (idx == order_.size()) {
      place_bare(st, 0);
      return;
    }
    EdgeId e = order_[idx];
    const std::string& label = l_.labels.at(e);
    if (auto f = forced(st, e)) {
      if (!gi_.edge_sources.count(*f)) return;
      State next = st;
      if (assign_edge(next, e, *f)) step(next, idx + 1);
      return;
    }
    for (EdgeId x : host_.edges_labelled(label)) {
      if (stopped_) return;
      if (st.eused.count(x)) continue;
      State next = st;
      if (assign_edge(next, e, x)) step(next, idx + 1);
    }
  }

  void place_bare(State& st, std::size_t k) {
    if (stopped_) return;
    if (k == bare_.size()) {
      if (!(*visit_)(st)) stopped_ = true;
      return;
    }
    VertexId t = bare_[k];
    VertexId s = l_.conn.at(t);
    for (VertexId y : g_.targets) {
      if (stopped_) return;
      if (g_.target_label(y) != l_.target_label(t)) continue;
      State next = st;
      if (boundary_) {
        if (st.internal.count(y) ||
            std::find(st.bare.begin(), st.bare.end(), y) != st.bare.end()) {
          continue;
        }
      } else {
        VertexId z = g_.conn.at(y);
        if (st.tused.count(y) || st.sused.count(z)) continue;
        next.tmap[t] = y;
        next.smap[s] = z;
        next.tused.insert(y);
        next.sused.insert(z);
      }
      next.bare.push_back(y);
      place_bare(next, k + 1);
    }
  }

  const LinearHypergraph& l_;
  const LinearHypergraph& g_;
  const HostView& host_;
  Incidence li_;
  const Incidence& gi_;
  bool boundary_;
  std::vector<EdgeId> order_;
  std::vector<VertexId> bare_;
  const Visit* visit_ = nullptr;
  bool stopped_ = false;
};

}  // namespace

void for_each_matching(const LinearHypergraph& l, const LinearHypergraph& g,
                       const std::function<bool(const Homomorphism&)>& visit) {
  HostView host(g);
  MatchSearch search(l, host, false);
  search.run([&](const MatchSearch::State& st) {
    return visit(Homomorphism{st.tmap, st.smap, st.emap});
  });
}

std::vector<Homomorphism> find_matchings(const LinearHypergraph& l, const LinearHypergraph& g) {
  std::vector<Homomorphism> out;
  for_each_matching(l, g, [&](const Homomorphism& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

LinearHypergraph apply_rewrite(const LinearHypergraph& g, const RewriteRule& rule, const Homomorphism& match,
                               bool keep_identity_edges) {
  ComplementResult cr = pushout_complement(rule.interface, rule.lhs, rule.left_leg, g, match);
  PushoutResult pr = pushout(rule.interface, cr.context, cr.interface_to_context, rule.rhs, rule.right_leg);
  return keep_identity_edges ? pr.graph : smooth(pr.graph);
}

PreparedRule prepare_rule(const RewriteRule& rule) {
  PreparedRule out;
  out.core = smooth(rule.lhs);
  LinearHypergraph expanded = out.core;
  Incidence inc(out.core);
  for (std::size_t i = 0; i < inc.inputs.size(); ++i) {
    VertexId t = inc.inputs[i];
    VertexId s = out.core.conn.at(t);
    EdgeId e;
    expanded = expand(expanded, t, e);
    bool bare = !inc.source_port.at(s).edge;
    out.wires.push_back({bare ? PreparedRule::WireKind::Bare : PreparedRule::WireKind::Input, i, s, e});
  }
  for (std::size_t j = 0; j < inc.outputs.size(); ++j) {
    VertexId t = inc.conn_inverse.at(inc.outputs[j]);
    if (!inc.target_port.at(t).edge) continue;
    EdgeId e;
    expanded = expand(expanded, t, e);
    out.wires.push_back({PreparedRule::WireKind::Output, j, t, e});
  }
  out.rule = rule_from_graphs(rule.name, expanded, smooth(rule.rhs));
  out.trivial = isomorphic(out.core, smooth(rule.rhs));
  return out;
}

namespace {

bool labels_available(const PreparedRule& rule, const HostView& host) {
  std::unordered_map<std::string, std::size_t> need;
  for (EdgeId e : rule.core.edges) ++need[rule.core.labels.at(e)];
  for (const auto& [label, n] : need) {
    if (host.edges_labelled(label).size() < n) return false;
  }
  return true;
}

void redexes_in(const PreparedRule& rule, const HostView& host, const std::function<bool(const Redex&)>& visit) {
  if (!labels_available(rule, host)) return;
  MatchSearch search(rule.core, host, true);
  search.run([&](const MatchSearch::State& st) {
    Redex r;
    r.edges = st.emap;
    r.targets = st.tmap;
    r.sources = st.smap;
    r.bare_wires = st.bare;
    for (EdgeId e : rule.core.edges) r.host_edges.push_back(st.emap.at(e));
    return visit(r);
  });
}

}  // namespace

void for_each_redex(const PreparedRule& rule, const LinearHypergraph& g,
                    const std::function<bool(const Redex&)>& visit) {
  HostView host(g);
  redexes_in(rule, host, visit);
}

std::vector<Redex> find_redexes(const PreparedRule& rule, const LinearHypergraph& g) {
  std::vector<Redex> out;
  for_each_redex(rule, g, [&](const Redex& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

LinearHypergraph apply_redex(const LinearHypergraph& g, const PreparedRule& rule, const Redex& redex,
                             bool keep_identity_edges) {
  Incidence gi(g);
  // Roles on each host wire, keyed by the wire's target: boundary outputs
  // first, then bare wires, then boundary inputs.
  struct Role {
    int rank;
    std::size_t wire;  // index into rule.wires
  };
  std::map<std::uint64_t, std::vector<Role>> roles;
  std::size_t bare_index = 0;
  for (std::size_t w = 0; w < rule.wires.size(); ++w) {
    const auto& bw = rule.wires[w];
    switch (bw.kind) {
      case PreparedRule::WireKind::Output:
        roles[redex.targets.at(bw.core_port).value].push_back({0, w});
        break;
      case PreparedRule::WireKind::Bare:
        roles[redex.bare_wires.at(bare_index++).value].push_back({1, w});
        break;
      case PreparedRule::WireKind::Input:
        roles[gi.conn_inverse.at(redex.sources.at(bw.core_port)).value].push_back({2, w});
        break;
    }
  }

  LinearHypergraph host = g;
  std::vector<EdgeId> host_edge(rule.wires.size());
  std::vector<VertexId> host_src(rule.wires.size()), host_tgt(rule.wires.size());
  std::unordered_map<VertexId, VertexId> conn_inv = gi.conn_inverse;
  for (auto& [y_value, list] : roles) {
    std::stable_sort(list.begin(), list.end(), [](const Role& a, const Role& b) { return a.rank < b.rank; });
    VertexId y{y_value};
    VertexId z = g.conn.at(y);
    const std::string& label = g.target_label(y);
    VertexId prev = y;
    auto insert_identity = [&](EdgeId& e, VertexId& s, VertexId& t) {
      e = fresh_edge();
      s = fresh_vertex();
      t = fresh_vertex();
      host.edges.push_back(e);
      host.labels[e] = std::string(kIdentityLabel);
      host.sources.push_back(s);
      host.targets.push_back(t);
      host.right[s] = e;
      host.left[t] = e;
      if (!label.empty()) {
        host.vslabels[s] = label;
        host.vtlabels[t] = label;
      }
      host.conn[prev] = s;
      conn_inv[s] = prev;
      prev = t;
    };
    for (std::size_t i = 0; i < list.size(); ++i) {
      EdgeId e;
      VertexId s, t;
      // Adjacent roles need separate wires between them.
      if (i > 0) insert_identity(e, s, t);
      insert_identity(e, s, t);
      host_edge[list[i].wire] = e;
      host_src[list[i].wire] = s;
      host_tgt[list[i].wire] = t;
    }
    host.conn[prev] = z;
    conn_inv[z] = prev;
  }

  const LinearHypergraph& lhs = rule.rule.lhs;
  Incidence li(lhs);
  Homomorphism match;
  match.edges = redex.edges;
  match.targets = redex.targets;
  match.sources = redex.sources;
  for (std::size_t w = 0; w < rule.wires.size(); ++w) {
    EdgeId le = rule.wires[w].identity;
    VertexId ls = li.edge_sources.at(le).at(0);
    VertexId lt = li.edge_targets.at(le).at(0);
    match.edges[le] = host_edge[w];
    match.sources[ls] = host_src[w];
    match.targets[lt] = host_tgt[w];
    match.targets[li.conn_inverse.at(ls)] = conn_inv.at(host_src[w]);
    match.sources[lhs.conn.at(lt)] = host.conn.at(host_tgt[w]);
  }
  if (!is_embedding(match, lhs, host)) throw RewriteError("internal error: redex does not embed");
  return apply_rewrite(host, rule.rule, match, keep_identity_edges);
}

std::string RewriteStep::to_string() const {
  std::string out = "step " + std::to_string(index) + ": rule " + rule + " at edges [";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(edges[i].value);
  }
  return out + "]";
}

NormalizeResult normalize(const LinearHypergraph& g, const std::vector<RewriteRule>& rules,
                          const RewritePolicy& policy) {
  std::vector<PreparedRule> prepared;
  prepared.reserve(rules.size());
  for (const auto& r : rules) prepared.push_back(prepare_rule(r));
  return normalize(g, prepared, policy);
}

namespace {

struct FoundRedex {
  const PreparedRule* rule;
  Redex redex;
};

std::optional<FoundRedex> first_redex(const std::vector<PreparedRule>& rules, const LinearHypergraph& g) {
  HostView host(g);
  for (const auto& rule : rules) {
    if (rule.trivial) continue;
    std::optional<Redex> found;
    redexes_in(rule, host, [&](const Redex& r) {
      found = r;
      return false;
    });
    if (found) return FoundRedex{&rule, std::move(*found)};
  }
  return std::nullopt;
}

void add_up_to_iso(std::vector<LinearHypergraph>& list, const LinearHypergraph& h, bool& added) {
  for (const auto& x : list) {
    if (isomorphic(x, h)) {
      added = false;
      return;
    }
  }
  list.push_back(h);
  added = true;
}

}  // namespace

NormalizeResult normalize(const LinearHypergraph& g, const std::vector<PreparedRule>& rules,
                          const RewritePolicy& policy) {
  NormalizeResult result;
  auto tidy = [&](const LinearHypergraph& h) { return policy.canonicalize ? canonical(h) : h; };
  if (policy.strategy == Strategy::Deterministic) {
    LinearHypergraph cur = tidy(policy.keep_identity_edges ? g : smooth(g));
    while (auto found = first_redex(rules, cur)) {
      if (result.steps >= policy.max_steps) {
        result.budget_exhausted = true;
        break;
      }
      result.log.push_back({result.steps + 1, found->rule->rule.name, found->redex.host_edges});
      cur = tidy(apply_redex(cur, *found->rule, found->redex, policy.keep_identity_edges));
      ++result.steps;
    }
    result.graph = std::move(cur);
    return result;
  }

  std::vector<LinearHypergraph> seen;
  std::deque<LinearHypergraph> frontier;
  bool added = false;
  LinearHypergraph start = tidy(policy.keep_identity_edges ? g : smooth(g));
  add_up_to_iso(seen, start, added);
  frontier.push_back(start);
  while (!frontier.empty()) {
    LinearHypergraph cur = std::move(frontier.front());
    frontier.pop_front();
    bool reducible = false;
    HostView host(cur);
    for (const auto& rule : rules) {
      if (rule.trivial) continue;
      std::vector<Redex> found;
      redexes_in(rule, host, [&](const Redex& r) {
        found.push_back(r);
        return true;
      });
      for (const Redex& r : found) {
        reducible = true;
        if (result.steps >= policy.max_steps) {
          result.budget_exhausted = true;
          break;
        }
        ++result.steps;
        result.log.push_back({result.steps, rule.rule.name, r.host_edges});
        LinearHypergraph next = tidy(apply_redex(cur, rule, r, policy.keep_identity_edges));
        add_up_to_iso(seen, next, added);
        if (added) frontier.push_back(std::move(next));
      }
      if (result.budget_exhausted) break;
    }
    if (!reducible) add_up_to_iso(result.normal_forms, cur, added);
    if (result.budget_exhausted) break;
  }
  result.graph = result.normal_forms.empty() ? start : result.normal_forms.front();
  return result;
}

std::vector<RewriteRule> parse_rules(std::string_view text, const Signature& sig) {
  std::vector<RewriteRule> rules;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::strip_comment(raw);
    if (detail::trim(line).empty()) continue;
    std::size_t colon = line.find(':');
    std::size_t arrow = line.find("=>");
    if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow < colon) {
      throw ParseError("expected 'name : lhs => rhs'", line_no, 1);
    }
    std::string name(detail::trim(line.substr(0, colon)));
    if (name.empty()) throw ParseError("missing rule name", line_no, 1);
    auto parse_side = [&](std::size_t from, std::size_t to) {
      try {
        return parse_term_syntax(line.substr(from, to - from));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), line_no, from + e.column());
      }
    };
    Term lhs = parse_side(colon + 1, arrow);
    Term rhs = parse_side(arrow + 2, line.size());
    rules.push_back(rule_from_terms(name, lhs, rhs, sig));
  }
  return rules;
}

}  // namespace lhg
