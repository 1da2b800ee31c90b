#include "lhg/random.hpp"

#include <algorithm>
#include <map>

#include "lhg/error.hpp"

namespace lhg {

TermGenerator::TermGenerator(const Signature& sig, std::uint64_t seed) : TermGenerator(sig, seed, Options{}) {}

TermGenerator::TermGenerator(const Signature& sig, std::uint64_t seed, Options options)
    : sig_(sig), rng_(seed), options_(options) {
  auto objs = sig.objects() ? *sig.objects() : sig.used_objects();
  objects_.assign(objs.begin(), objs.end());
  if (objects_.empty()) objects_.push_back("");
}

std::size_t TermGenerator::below(std::size_t n) {
  if (n == 0) return 0;
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

bool TermGenerator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

Word TermGenerator::random_word(std::size_t max_length) {
  std::size_t n = below(max_length + 1);
  Word w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(objects_[below(objects_.size())]);
  return w;
}

Term TermGenerator::layer(const Word& dom) {
  std::vector<Term> factors;
  std::vector<std::string> constants;
  for (const auto& [name, type] : sig_.generators()) {
    if (type.dom.empty()) constants.push_back(name);
  }
  bool too_wide = dom.size() > options_.max_width;
  auto maybe_constant = [&]() {
    if (!too_wide && !constants.empty() && chance(0.15)) {
      factors.push_back(Term::gen(constants[below(constants.size())]));
    }
  };
  std::size_t i = 0;
  while (i < dom.size()) {
    maybe_constant();
    std::vector<std::pair<std::string, std::size_t>> candidates;
    for (const auto& [name, type] : sig_.generators()) {
      std::size_t len = type.dom.size();
      if (len == 0 || i + len > dom.size()) continue;
      if (!std::equal(type.dom.begin(), type.dom.end(), dom.begin() + static_cast<std::ptrdiff_t>(i))) continue;
      if (too_wide && type.cod.size() >= len) continue;
      candidates.emplace_back(name, len);
    }
    std::size_t choice = below(10);
    if (!candidates.empty() && (choice < 6 || too_wide)) {
      const auto& [name, len] = candidates[below(candidates.size())];
      factors.push_back(Term::gen(name));
      i += len;
    } else if (choice < 8 && i + 1 < dom.size()) {
      factors.push_back(Term::swap({dom[i]}, {dom[i + 1]}));
      i += 2;
    } else {
      factors.push_back(Term::id({dom[i]}));
      i += 1;
    }
  }
  maybe_constant();
  if (factors.empty()) return Term::id(dom);
  return tensor_of(factors);
}

std::optional<Term> TermGenerator::traced(const Word& dom, std::size_t depth) {
  std::string x = objects_[below(objects_.size())];
  Term body = from(concat({x}, dom), depth - 1);
  Word c = type_of(body, sig_).cod;
  auto it = std::find(c.begin(), c.end(), x);
  if (it != c.end() && it == c.begin()) return Term::trace({x}, body);
  if (it != c.end()) {
    std::size_t j = static_cast<std::size_t>(it - c.begin());
    Term perm = tensor_of({Term::swap(slice(c, 0, j), {x}), Term::id(slice(c, j + 1, c.size()))});
    return Term::trace({x}, Term::seq(body, perm));
  }
  for (const auto& [name, type] : sig_.generators()) {
    if (type.dom.empty() && type.cod == Word{x}) {
      return Term::trace({x}, Term::tensor(Term::gen(name), body));
    }
  }
  return std::nullopt;
}

Term TermGenerator::from(const Word& dom, std::size_t depth) {
  if (depth == 0) return layer(dom);
  std::size_t r = below(10);
  if (r < 2) return layer(dom);
  if (r < 5 || (r >= 8 && !options_.allow_trace)) {
    Term a = from(dom, depth - 1);
    Term b = from(type_of(a, sig_).cod, depth - 1);
    return Term::seq(a, b);
  }
  if (r < 8) {
    std::size_t k = below(dom.size() + 1);
    Term a = from(slice(dom, 0, k), depth - 1);
    Term b = from(slice(dom, k, dom.size()), depth - 1);
    return Term::tensor(a, b);
  }
  if (auto t = traced(dom, depth)) return *t;
  return layer(dom);
}

Term TermGenerator::any(std::size_t depth) { return from(random_word(3), depth); }

std::optional<Term> TermGenerator::adapter(const Word& from, const Word& to) {
  std::size_t p = 0;
  while (p < from.size() && p < to.size() && from[p] == to[p]) ++p;
  if (p > 0) p = below(p + 1);
  std::vector<Term> parts{Term::id(slice(from, 0, p))};
  for (std::size_t i = p; i < from.size(); ++i) {
    std::optional<std::string> sink;
    for (const auto& [name, type] : sig_.generators()) {
      if (type.cod.empty() && type.dom == Word{from[i]}) sink = name;
    }
    if (!sink) return std::nullopt;
    parts.push_back(Term::gen(*sink));
  }
  for (std::size_t i = p; i < to.size(); ++i) {
    std::optional<std::string> source;
    for (const auto& [name, type] : sig_.generators()) {
      if (type.dom.empty() && type.cod == Word{to[i]}) source = name;
    }
    if (!source) return std::nullopt;
    parts.push_back(Term::gen(*source));
  }
  return tensor_of(parts);
}

Term TermGenerator::between(const Word& dom, const Word& cod, std::size_t depth) {
  Term t = from(dom, depth);
  Word c = type_of(t, sig_).cod;
  if (c == cod) return t;
  auto a = adapter(c, cod);
  if (!a) throw Error("signature cannot discard or create the required objects");
  return Term::seq(t, *a);
}

LinearHypergraph random_graph(const Signature& sig, std::mt19937_64& rng, const RandomGraphOptions& options) {
  std::vector<std::pair<std::string, GeneratorType>> gens(sig.generators().begin(), sig.generators().end());
  if (gens.empty()) throw Error("random_graph needs a non-empty signature");
  auto below = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto objs = sig.objects() ? *sig.objects() : sig.used_objects();
  std::vector<std::string> objects(objs.begin(), objs.end());
  if (objects.empty()) objects.push_back("");

  for (int attempt = 0;; ++attempt) {
    std::size_t k = options.min_edges + below(options.max_edges - options.min_edges + 1);
    std::vector<std::size_t> picks;
    std::map<std::string, long> balance;  // sources minus targets required per object
    for (std::size_t i = 0; i < k; ++i) {
      picks.push_back(below(gens.size()));
      const auto& type = gens[picks.back()].second;
      for (const auto& l : type.dom) ++balance[l];
      for (const auto& l : type.cod) --balance[l];
    }
    // inputs(l) - outputs(l) = balance(l)
    std::map<std::string, std::size_t> ins, outs;
    std::size_t target_count = 0;
    for (std::size_t p : picks) target_count += gens[p].second.cod.size();
    for (const auto& [l, b] : balance) {
      if (b > 0) ins[l] += static_cast<std::size_t>(b);
      if (b < 0) outs[l] += static_cast<std::size_t>(-b);
    }
    std::size_t extra = below(3);
    for (std::size_t i = 0; i < extra; ++i) {
      const auto& l = objects[below(objects.size())];
      ++ins[l];
      ++outs[l];
    }
    for (const auto& [l, n] : ins) target_count += n;
    if (2 * target_count > options.max_vertices) {
      if (attempt > 1000) throw Error("random_graph: bounds too tight");
      continue;
    }

    LinearHypergraph h;
    std::vector<EdgeId> edges;
    std::map<std::string, std::vector<VertexId>> targets_by_label, sources_by_label;
    std::vector<VertexId> all_targets, all_sources;
    for (std::size_t p : picks) {
      EdgeId e = fresh_edge();
      edges.push_back(e);
      h.labels[e] = gens[p].first;
      for (const auto& l : gens[p].second.dom) {
        VertexId s = fresh_vertex();
        h.right[s] = e;
        if (!l.empty()) h.vslabels[s] = l;
        sources_by_label[l].push_back(s);
        all_sources.push_back(s);
      }
      for (const auto& l : gens[p].second.cod) {
        VertexId t = fresh_vertex();
        h.left[t] = e;
        if (!l.empty()) h.vtlabels[t] = l;
        targets_by_label[l].push_back(t);
        all_targets.push_back(t);
      }
    }
    for (const auto& [l, n] : ins) {
      for (std::size_t i = 0; i < n; ++i) {
        VertexId t = fresh_vertex();
        h.left[t] = std::nullopt;
        if (!l.empty()) h.vtlabels[t] = l;
        targets_by_label[l].push_back(t);
        all_targets.push_back(t);
      }
    }
    for (const auto& [l, n] : outs) {
      for (std::size_t i = 0; i < n; ++i) {
        VertexId s = fresh_vertex();
        h.right[s] = std::nullopt;
        if (!l.empty()) h.vslabels[s] = l;
        sources_by_label[l].push_back(s);
        all_sources.push_back(s);
      }
    }
    for (auto& [l, ts] : targets_by_label) {
      auto& ss = sources_by_label[l];
      std::shuffle(ss.begin(), ss.end(), rng);
      for (std::size_t i = 0; i < ts.size(); ++i) h.conn[ts[i]] = ss.at(i);
    }
    // Interleave the port blocks at random, keeping each block in order.
    auto interleave = [&](const std::vector<VertexId>& vs, const std::unordered_map<VertexId, Attachment>& att) {
      std::map<std::uint64_t, std::vector<VertexId>> blocks;
      std::vector<std::uint64_t> draws;
      for (VertexId v : vs) {
        std::uint64_t key = att.at(v) ? att.at(v)->value : 0;
        blocks[key].push_back(v);
        draws.push_back(key);
      }
      std::shuffle(blocks[0].begin(), blocks[0].end(), rng);  // interface order is free
      std::shuffle(draws.begin(), draws.end(), rng);
      std::map<std::uint64_t, std::size_t> next;
      std::vector<VertexId> out;
      for (std::uint64_t key : draws) out.push_back(blocks[key][next[key]++]);
      return out;
    };
    std::shuffle(edges.begin(), edges.end(), rng);
    h.targets = interleave(all_targets, h.left);
    h.sources = interleave(all_sources, h.right);
    h.edges = std::move(edges);
    return h;
  }
}

Signature sample_prop_signature() {
  Signature sig;
  sig.add("f", nat(1), nat(1));
  sig.add("g", nat(1), nat(2));
  sig.add("h", nat(2), nat(2));
  sig.add("k", nat(2), nat(1));
  sig.add("c", nat(0), nat(1));
  sig.add("d", nat(1), nat(0));
  return sig;
}

Signature sample_labelled_signature() {
  Signature sig;
  sig.declare_objects({"A", "B", "C"});
  sig.add("f", {"A"}, {"B"});
  sig.add("g", {"B"}, {"A"});
  sig.add("h", {"B", "A"}, {"C", "A"});
  sig.add("m", {"C"}, {"A", "B"});
  for (const char* o : {"A", "B", "C"}) {
    sig.add(std::string("new") + o, {}, {o});
    sig.add(std::string("del") + o, {o}, {});
  }
  return sig;
}

}  // namespace lhg
