#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lhg/signature.hpp"
#include "lhg/word.hpp"

namespace lhg {

// Immutable syntax tree of a morphism in the free traced monoidal category.
class Term {
 public:
  enum class Kind { Gen, Id, Swap, Seq, Tensor, Trace };

  Term();  // id 0

  static Term gen(std::string name);
  static Term id(Word w);
  static Term swap(Word m, Word n);
  static Term seq(Term left, Term right);
  static Term tensor(Term top, Term bottom);
  static Term trace(Word x, Term body);

  Kind kind() const;
  const std::string& name() const;  // Gen
  const Word& word() const;         // Id word, Trace word, first Swap word
  const Word& second_word() const;  // second Swap word
  const Term& left() const;         // Seq left, Tensor top
  const Term& right() const;        // Seq right, Tensor bottom
  const Term& body() const;         // Trace body

  std::size_t size() const;
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct TermType {
  Word dom;
  Word cod;
  friend bool operator==(const TermType&, const TermType&) = default;
};

// Throws TypeError naming the offending subterm.
TermType type_of(const Term& t, const Signature& sig);

// Grammar: term := ten (";" ten)*, ten := atom ("*" atom)*,
// atom := NAME | "id" WORD | "swap" WORD WORD | "tr" WORD "(" term ")" | "(" term ")",
// WORD := NAT | "[" NAME ("," NAME)* "]".
// Throws ParseError on malformed text and TypeError on ill-typed terms.
Term parse_term(std::string_view text, const Signature& sig);
Term parse_term_syntax(std::string_view text);
std::string render_term(const Term& t);

bool is_trace_free(const Term& t);

// Rewrites a trace-free term into a composite of slices `id ⊗ k ⊗ id` with a
// single non-identity k each. Throws Error if t contains a trace.
Term stage(const Term& t, const Signature& sig);

// Returns (x, b) with b trace-free and tr x (b) equal to t.
std::pair<Word, Term> global_trace_form(const Term& t, const Signature& sig);

// Removes units: empty identities in tensors, identities in composites,
// trivial swaps and traces over the empty word.
Term simplify(const Term& t);

// Tensor and composite that skip empty-identity factors.
Term tensor_of(const std::vector<Term>& factors);
Term seq_of(const std::vector<Term>& steps, const Word& dom);

}  // namespace lhg
