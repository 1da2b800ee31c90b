#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lhg/error.hpp"
#include "lhg/word.hpp"

namespace lhg::detail {

struct Token {
  enum class Kind { Name, Nat, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Names are [A-Za-z_][A-Za-z0-9_']*. Symbols are single characters except
// the two arrows `->` and `=>`. `#` comments run to the end of the line.
std::vector<Token> tokenize(std::string_view text, std::size_t first_line = 1);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool accept_symbol(std::string_view s);
  bool accept_name(std::string_view s);
  void expect_symbol(std::string_view s);
  std::string expect_name();
  std::size_t expect_nat();
  Word expect_word();
  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_lines(std::string_view text);
std::string_view strip_comment(std::string_view line);

}  // namespace lhg::detail
