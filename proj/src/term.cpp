#include "lhg/term.hpp"

#include <optional>

#include "lexer.hpp"
#include "lhg/error.hpp"

namespace lhg {

struct Term::Node {
  Kind kind;
  std::string name;
  Word first;
  Word second;
  std::vector<Term> kids;
  std::size_t size = 1;
};

Term::Term() : Term(Term::id({})) {}

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Term Term::gen(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gen;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::id(Word w) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Id;
  n->first = std::move(w);
  return Term(std::move(n));
}

Term Term::swap(Word m, Word k) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Swap;
  n->first = std::move(m);
  n->second = std::move(k);
  return Term(std::move(n));
}

Term Term::seq(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Seq;
  n->size = 1 + left.size() + right.size();
  n->kids = {std::move(left), std::move(right)};
  return Term(std::move(n));
}

Term Term::tensor(Term top, Term bottom) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tensor;
  n->size = 1 + top.size() + bottom.size();
  n->kids = {std::move(top), std::move(bottom)};
  return Term(std::move(n));
}

Term Term::trace(Word x, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Trace;
  n->first = std::move(x);
  n->size = 1 + body.size();
  n->kids = {std::move(body)};
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Word& Term::word() const { return node_->first; }
const Word& Term::second_word() const { return node_->second; }
const Term& Term::left() const { return node_->kids.at(0); }
const Term& Term::right() const { return node_->kids.at(1); }
const Term& Term::body() const { return node_->kids.at(0); }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.first == y.first && x.second == y.second &&
         x.kids == y.kids;
}

TermType type_of(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case Term::Kind::Gen: {
      const GeneratorType* g = sig.find(t.name());
      if (!g) throw TypeError("unknown generator '" + t.name() + "'");
      return {g->dom, g->cod};
    }
    case Term::Kind::Id:
      return {t.word(), t.word()};
    case Term::Kind::Swap:
      return {concat(t.word(), t.second_word()), concat(t.second_word(), t.word())};
    case Term::Kind::Seq: {
      TermType a = type_of(t.left(), sig);
      TermType b = type_of(t.right(), sig);
      if (a.cod != b.dom) {
        throw TypeError("cannot compose " + render_word(a.cod) + " with " + render_word(b.dom) +
                        " in '" + render_term(t) + "'");
      }
      return {a.dom, b.cod};
    }
    case Term::Kind::Tensor: {
      TermType a = type_of(t.left(), sig);
      TermType b = type_of(t.right(), sig);
      return {concat(a.dom, b.dom), concat(a.cod, b.cod)};
    }
    case Term::Kind::Trace: {
      TermType b = type_of(t.body(), sig);
      const Word& x = t.word();
      if (!has_prefix(b.dom, x) || !has_prefix(b.cod, x)) {
        throw TypeError("cannot trace " + render_word(x) + " out of " + render_word(b.dom) +
                        " -> " + render_word(b.cod) + " in '" + render_term(t) + "'");
      }
      return {slice(b.dom, x.size(), b.dom.size()), slice(b.cod, x.size(), b.cod.size())};
    }
  }
  throw TypeError("malformed term");
}

namespace {

Term parse_seq(detail::TokenStream& ts);

Term parse_atom(detail::TokenStream& ts) {
  if (ts.accept_symbol("(")) {
    Term t = parse_seq(ts);
    ts.expect_symbol(")");
    return t;
  }
  if (ts.peek().kind != detail::Token::Kind::Name) ts.fail("expected a term");
  std::string name = ts.next().text;
  if (name == "id") return Term::id(ts.expect_word());
  if (name == "swap") {
    Word m = ts.expect_word();
    Word n = ts.expect_word();
    return Term::swap(std::move(m), std::move(n));
  }
  if (name == "tr") {
    Word x = ts.expect_word();
    ts.expect_symbol("(");
    Term body = parse_seq(ts);
    ts.expect_symbol(")");
    return Term::trace(std::move(x), std::move(body));
  }
  return Term::gen(std::move(name));
}

Term parse_tensor(detail::TokenStream& ts) {
  Term t = parse_atom(ts);
  while (ts.accept_symbol("*")) t = Term::tensor(t, parse_atom(ts));
  return t;
}

Term parse_seq(detail::TokenStream& ts) {
  Term t = parse_tensor(ts);
  while (ts.accept_symbol(";")) t = Term::seq(t, parse_tensor(ts));
  return t;
}

// Contexts: 0 composite, 1 tensor factor, 2 right tensor factor.
void render(const Term& t, int ctx, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Gen:
      out += t.name();
      return;
    case Term::Kind::Id:
      out += "id " + render_word(t.word());
      return;
    case Term::Kind::Swap:
      out += "swap " + render_word(t.word()) + " " + render_word(t.second_word());
      return;
    case Term::Kind::Trace:
      out += "tr " + render_word(t.word()) + " (";
      render(t.body(), 0, out);
      out += ")";
      return;
    case Term::Kind::Seq:
      if (ctx > 0) out += "(";
      render(t.left(), 0, out);
      out += " ; ";
      render(t.right(), 1, out);
      if (ctx > 0) out += ")";
      return;
    case Term::Kind::Tensor:
      if (ctx > 1) out += "(";
      render(t.left(), 1, out);
      out += " * ";
      render(t.right(), 2, out);
      if (ctx > 1) out += ")";
      return;
  }
}

bool is_empty_id(const Term& t) { return t.kind() == Term::Kind::Id && t.word().empty(); }

struct Slice {
  Word pre;
  Term k;
  Word post;
};

// Appends the slices of t, whose type is returned.
TermType collect_slices(const Term& t, const Signature& sig, std::vector<Slice>& out) {
  switch (t.kind()) {
    case Term::Kind::Gen: {
      TermType ty = type_of(t, sig);
      out.push_back({{}, t, {}});
      return ty;
    }
    case Term::Kind::Id:
      return {t.word(), t.word()};
    case Term::Kind::Swap: {
      TermType ty = type_of(t, sig);
      if (!t.word().empty() && !t.second_word().empty()) out.push_back({{}, t, {}});
      return ty;
    }
    case Term::Kind::Seq: {
      TermType a = collect_slices(t.left(), sig, out);
      TermType b = collect_slices(t.right(), sig, out);
      if (a.cod != b.dom) throw TypeError("ill-typed composite in '" + render_term(t) + "'");
      return {a.dom, b.cod};
    }
    case Term::Kind::Tensor: {
      std::vector<Slice> top, bottom;
      TermType a = collect_slices(t.left(), sig, top);
      TermType b = collect_slices(t.right(), sig, bottom);
      for (auto& s : top) out.push_back({s.pre, s.k, concat(s.post, b.dom)});
      for (auto& s : bottom) out.push_back({concat(a.cod, s.pre), s.k, s.post});
      return {concat(a.dom, b.dom), concat(a.cod, b.cod)};
    }
    case Term::Kind::Trace:
      throw Error("cannot stage a term containing a trace");
  }
  throw Error("malformed term");
}

}  // namespace

Term parse_term_syntax(std::string_view text) {
  detail::TokenStream ts(detail::tokenize(text));
  Term t = parse_seq(ts);
  if (!ts.at_end()) ts.fail("expected ';', '*' or end of input");
  return t;
}

Term parse_term(std::string_view text, const Signature& sig) {
  Term t = parse_term_syntax(text);
  type_of(t, sig);
  return t;
}

std::string render_term(const Term& t) {
  std::string out;
  render(t, 0, out);
  return out;
}

bool is_trace_free(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Trace:
      return false;
    case Term::Kind::Seq:
    case Term::Kind::Tensor:
      return is_trace_free(t.left()) && is_trace_free(t.right());
    default:
      return true;
  }
}

Term tensor_of(const std::vector<Term>& factors) {
  std::optional<Term> acc;
  for (const auto& f : factors) {
    if (is_empty_id(f)) continue;
    acc = acc ? Term::tensor(*acc, f) : f;
  }
  return acc ? *acc : Term::id({});
}

Term seq_of(const std::vector<Term>& steps, const Word& dom) {
  std::optional<Term> acc;
  for (const auto& s : steps) {
    if (s.kind() == Term::Kind::Id) continue;
    acc = acc ? Term::seq(*acc, s) : s;
  }
  return acc ? *acc : Term::id(dom);
}

Term stage(const Term& t, const Signature& sig) {
  std::vector<Slice> slices;
  TermType ty = collect_slices(t, sig, slices);
  std::vector<Term> steps;
  for (const auto& s : slices) steps.push_back(tensor_of({Term::id(s.pre), s.k, Term::id(s.post)}));
  return seq_of(steps, ty.dom);
}

std::pair<Word, Term> global_trace_form(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case Term::Kind::Gen:
    case Term::Kind::Id:
    case Term::Kind::Swap:
      type_of(t, sig);
      return {{}, t};
    case Term::Kind::Trace: {
      type_of(t, sig);
      auto [y, b] = global_trace_form(t.body(), sig);
      return {concat(y, t.word()), b};
    }
    case Term::Kind::Seq: {
      auto [y, a] = global_trace_form(t.left(), sig);
      auto [x, c] = global_trace_form(t.right(), sig);
      TermType ta = type_of(t.left(), sig);
      TermType tc = type_of(t.right(), sig);
      if (ta.cod != tc.dom) throw TypeError("ill-typed composite in '" + render_term(t) + "'");
      if (x.empty()) {
        return {y, Term::seq(a, tensor_of({Term::id(y), c}))};
      }
      if (y.empty()) {
        return {x, Term::seq(tensor_of({Term::id(x), a}), c)};
      }
      // (y, x, A) -> (y, A, x) -> (y, B, x) -> (y, x, B) -> (y, x, C)
      Term body = Term::seq(
          Term::seq(Term::seq(tensor_of({Term::id(y), Term::swap(x, ta.dom)}),
                              tensor_of({a, Term::id(x)})),
                    tensor_of({Term::id(y), Term::swap(ta.cod, x)})),
          tensor_of({Term::id(y), c}));
      return {concat(y, x), body};
    }
    case Term::Kind::Tensor: {
      auto [y, a] = global_trace_form(t.left(), sig);
      auto [x, c] = global_trace_form(t.right(), sig);
      TermType ta = type_of(t.left(), sig);
      TermType tc = type_of(t.right(), sig);
      if (x.empty()) return {y, Term::tensor(a, c)};
      // (y, x, A, C) -> (y, A, x, C) -> (y, B, x, D) -> (y, x, B, D)
      Term body = Term::seq(
          Term::seq(tensor_of({Term::id(y), Term::swap(x, ta.dom), Term::id(tc.dom)}),
                    Term::tensor(a, c)),
          tensor_of({Term::id(y), Term::swap(ta.cod, x), Term::id(tc.cod)}));
      return {concat(y, x), body};
    }
  }
  throw Error("malformed term");
}

Term simplify(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Gen:
    case Term::Kind::Id:
      return t;
    case Term::Kind::Swap:
      if (t.word().empty() || t.second_word().empty()) {
        return Term::id(concat(t.word(), t.second_word()));
      }
      return t;
    case Term::Kind::Seq: {
      Term a = simplify(t.left());
      Term b = simplify(t.right());
      if (a.kind() == Term::Kind::Id) return b;
      if (b.kind() == Term::Kind::Id) return a;
      return Term::seq(a, b);
    }
    case Term::Kind::Tensor: {
      Term a = simplify(t.left());
      Term b = simplify(t.right());
      if (is_empty_id(a)) return b;
      if (is_empty_id(b)) return a;
      if (a.kind() == Term::Kind::Id && b.kind() == Term::Kind::Id) {
        return Term::id(concat(a.word(), b.word()));
      }
      return Term::tensor(a, b);
    }
    case Term::Kind::Trace: {
      Term b = simplify(t.body());
      if (t.word().empty()) return b;
      if (b.kind() == Term::Kind::Id && has_prefix(b.word(), t.word())) {
        return Term::id(slice(b.word(), t.word().size(), b.word().size()));
      }
      return Term::trace(t.word(), b);
    }
  }
  return t;
}

}  // namespace lhg
