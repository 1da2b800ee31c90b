#include "lhg/ops.hpp"

#include <unordered_set>

#include "lhg/error.hpp"

namespace lhg {

namespace {

void set_target(LinearHypergraph& h, VertexId v, Attachment a, const std::string& label) {
  h.targets.push_back(v);
  h.left[v] = a;
  if (!label.empty()) h.vtlabels[v] = label;
}

void set_source(LinearHypergraph& h, VertexId v, Attachment a, const std::string& label) {
  h.sources.push_back(v);
  h.right[v] = a;
  if (!label.empty()) h.vslabels[v] = label;
}

void erase_vertex(LinearHypergraph& h, VertexId v) {
  h.left.erase(v);
  h.right.erase(v);
  h.conn.erase(v);
  h.vtlabels.erase(v);
  h.vslabels.erase(v);
}

// Deletes the first input and first output, splicing their wires.
void trace_one(LinearHypergraph& h) {
  auto ins = h.inputs();
  auto outs = h.outputs();
  VertexId i0 = ins.at(0);
  VertexId o0 = outs.at(0);
  VertexId into_o0{};
  for (const auto& [t, s] : h.conn) {
    if (s == o0) {
      into_o0 = t;
      break;
    }
  }
  VertexId from_i0 = h.conn.at(i0);
  if (into_o0 != i0) h.conn[into_o0] = from_i0;
  std::erase(h.targets, i0);
  std::erase(h.sources, o0);
  erase_vertex(h, i0);
  erase_vertex(h, o0);
}

void check_trace(const Word& x, const LinearHypergraph& f) {
  if (!has_prefix(f.dom(), x) || !has_prefix(f.cod(), x)) {
    throw TypeError("cannot trace " + render_word(x) + " out of " + render_word(f.dom()) + " -> " +
                    render_word(f.cod()));
  }
}

}  // namespace

LinearHypergraph empty_graph() { return {}; }

LinearHypergraph identity(const Word& n) {
  LinearHypergraph h;
  for (const auto& label : n) {
    VertexId a = fresh_vertex();
    VertexId b = fresh_vertex();
    set_target(h, a, std::nullopt, label);
    set_source(h, b, std::nullopt, label);
    h.conn[a] = b;
  }
  return h;
}

LinearHypergraph generator(const std::string& name, const GeneratorType& type) {
  LinearHypergraph h;
  EdgeId e = fresh_edge();
  h.edges.push_back(e);
  h.labels[e] = name;
  for (const auto& label : type.dom) {
    VertexId va = fresh_vertex();
    VertexId vb = fresh_vertex();
    set_target(h, va, std::nullopt, label);
    set_source(h, vb, e, label);
    h.conn[va] = vb;
  }
  for (const auto& label : type.cod) {
    VertexId vc = fresh_vertex();
    VertexId vd = fresh_vertex();
    set_target(h, vc, e, label);
    set_source(h, vd, std::nullopt, label);
    h.conn[vc] = vd;
  }
  return h;
}

LinearHypergraph generator(const std::string& name, const Signature& sig) {
  const GeneratorType* g = sig.find(name);
  if (!g) throw TypeError("unknown generator '" + name + "'");
  return generator(name, *g);
}

LinearHypergraph identity_edge(const std::string& label) {
  return generator(std::string(kIdentityLabel), GeneratorType{{label}, {label}});
}

LinearHypergraph swap(const Word& m, const Word& n) {
  LinearHypergraph h;
  std::vector<VertexId> a, b, c, d;
  for (std::size_t i = 0; i < m.size(); ++i) a.push_back(fresh_vertex());
  for (std::size_t i = 0; i < n.size(); ++i) b.push_back(fresh_vertex());
  for (std::size_t i = 0; i < n.size(); ++i) c.push_back(fresh_vertex());
  for (std::size_t i = 0; i < m.size(); ++i) d.push_back(fresh_vertex());
  for (std::size_t i = 0; i < m.size(); ++i) set_target(h, a[i], std::nullopt, m[i]);
  for (std::size_t i = 0; i < n.size(); ++i) set_target(h, b[i], std::nullopt, n[i]);
  for (std::size_t i = 0; i < n.size(); ++i) set_source(h, c[i], std::nullopt, n[i]);
  for (std::size_t i = 0; i < m.size(); ++i) set_source(h, d[i], std::nullopt, m[i]);
  for (std::size_t i = 0; i < m.size(); ++i) h.conn[a[i]] = d[i];
  for (std::size_t i = 0; i < n.size(); ++i) h.conn[b[i]] = c[i];
  return h;
}

LinearHypergraph swap_recursive(const Word& m, const Word& n) {
  if (m.empty() || n.empty()) return identity(concat(m, n));
  if (m.size() == 1 && n.size() == 1) {
    // T = {a < b}, S = {c < d}, a wired to d and b wired to c.
    LinearHypergraph h;
    VertexId a = fresh_vertex(), b = fresh_vertex(), c = fresh_vertex(), d = fresh_vertex();
    set_target(h, a, std::nullopt, m[0]);
    set_target(h, b, std::nullopt, n[0]);
    set_source(h, c, std::nullopt, n[0]);
    set_source(h, d, std::nullopt, m[0]);
    h.conn[a] = d;
    h.conn[b] = c;
    return h;
  }
  if (n.size() == 1) {
    // swap(k+1, 1) = k ⊗ swap(1, 1) ; swap(k, 1) ⊗ 1
    Word head = slice(m, 0, m.size() - 1);
    Word last = {m.back()};
    return compose(tensor(identity(head), swap_recursive(last, n)),
                   tensor(swap_recursive(head, n), identity(last)));
  }
  if (m.size() == 1) {
    // swap(1, k+1) = swap(1, k) ⊗ 1 ; k ⊗ swap(1, 1)
    Word head = slice(n, 0, n.size() - 1);
    Word last = {n.back()};
    return compose(tensor(swap_recursive(m, head), identity(last)),
                   tensor(identity(head), swap_recursive(m, last)));
  }
  // swap(k+1, l+1) = k ⊗ swap(1, l) ⊗ 1 ; swap(k, l) ⊗ swap(1, 1) ; l ⊗ swap(k, 1) ⊗ 1
  Word mh = slice(m, 0, m.size() - 1);
  Word ml = {m.back()};
  Word nh = slice(n, 0, n.size() - 1);
  Word nl = {n.back()};
  LinearHypergraph first = tensor(tensor(identity(mh), swap_recursive(ml, nh)), identity(nl));
  LinearHypergraph second = tensor(swap_recursive(mh, nh), swap_recursive(ml, nl));
  LinearHypergraph third = tensor(tensor(identity(nh), swap_recursive(mh, nl)), identity(ml));
  return compose(compose(first, second), third);
}

LinearHypergraph compose(const LinearHypergraph& f, const LinearHypergraph& g_in) {
  Word cod = f.cod();
  Word dom = g_in.dom();
  if (cod != dom) {
    throw TypeError("cannot compose " + render_word(f.dom()) + " -> " + render_word(cod) + " with " +
                    render_word(dom) + " -> " + render_word(g_in.cod()));
  }
  LinearHypergraph g = shares_atoms(f, g_in) ? freshen(g_in) : g_in;
  std::vector<VertexId> f_out = f.outputs();
  std::vector<VertexId> g_in_vs = g.inputs();
  std::unordered_map<VertexId, std::size_t> out_index;
  for (std::size_t i = 0; i < f_out.size(); ++i) out_index[f_out[i]] = i;
  std::unordered_set<VertexId> g_inputs(g_in_vs.begin(), g_in_vs.end());

  LinearHypergraph h;
  for (VertexId t : f.targets) h.targets.push_back(t);
  for (VertexId t : g.targets) {
    if (!g_inputs.count(t)) h.targets.push_back(t);
  }
  for (VertexId s : f.sources) {
    if (!out_index.count(s)) h.sources.push_back(s);
  }
  for (VertexId s : g.sources) h.sources.push_back(s);
  h.edges = f.edges;
  h.edges.insert(h.edges.end(), g.edges.begin(), g.edges.end());

  for (VertexId t : f.targets) {
    h.left[t] = f.left.at(t);
    VertexId s = f.conn.at(t);
    auto it = out_index.find(s);
    h.conn[t] = it == out_index.end() ? s : g.conn.at(g_in_vs[it->second]);
  }
  for (VertexId t : g.targets) {
    if (g_inputs.count(t)) continue;
    h.left[t] = g.left.at(t);
    h.conn[t] = g.conn.at(t);
  }
  for (VertexId s : f.sources) {
    if (!out_index.count(s)) h.right[s] = f.right.at(s);
  }
  for (VertexId s : g.sources) h.right[s] = g.right.at(s);
  h.labels = f.labels;
  h.labels.insert(g.labels.begin(), g.labels.end());
  for (const auto& [v, l] : f.vtlabels) h.vtlabels[v] = l;
  for (const auto& [v, l] : g.vtlabels) {
    if (!g_inputs.count(v)) h.vtlabels[v] = l;
  }
  for (const auto& [v, l] : f.vslabels) {
    if (!out_index.count(v)) h.vslabels[v] = l;
  }
  for (const auto& [v, l] : g.vslabels) h.vslabels[v] = l;
  return h;
}

LinearHypergraph tensor(const LinearHypergraph& f, const LinearHypergraph& g_in) {
  LinearHypergraph g = shares_atoms(f, g_in) ? freshen(g_in) : g_in;
  LinearHypergraph h = f;
  h.targets.insert(h.targets.end(), g.targets.begin(), g.targets.end());
  h.sources.insert(h.sources.end(), g.sources.begin(), g.sources.end());
  h.edges.insert(h.edges.end(), g.edges.begin(), g.edges.end());
  h.left.insert(g.left.begin(), g.left.end());
  h.right.insert(g.right.begin(), g.right.end());
  h.conn.insert(g.conn.begin(), g.conn.end());
  h.labels.insert(g.labels.begin(), g.labels.end());
  h.vtlabels.insert(g.vtlabels.begin(), g.vtlabels.end());
  h.vslabels.insert(g.vslabels.begin(), g.vslabels.end());
  return h;
}

LinearHypergraph trace(const Word& x, const LinearHypergraph& f) {
  check_trace(x, f);
  LinearHypergraph h = f;
  for (std::size_t i = 0; i < x.size(); ++i) trace_one(h);
  return h;
}

std::pair<LinearHypergraph, Homomorphism> trace_mono(const Word& x, const LinearHypergraph& f) {
  check_trace(x, f);
  LinearHypergraph h = f;
  auto ins = f.inputs();
  auto outs = f.outputs();
  for (std::size_t i = 0; i < x.size(); ++i) {
    // The traced output becomes the source port of a fresh identity edge
    // whose target port is the traced input.
    EdgeId e = fresh_edge();
    h.edges.push_back(e);
    h.labels[e] = std::string(kIdentityLabel);
    h.right[outs[i]] = e;
    h.left[ins[i]] = e;
  }
  return {std::move(h), identity_homomorphism(f)};
}

}  // namespace lhg
