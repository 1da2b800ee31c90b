#include "lexer.hpp"

#include <cctype>

namespace lhg::detail {

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok{Token::Kind::Symbol, "", line, col};
    if (name_start(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      tok.kind = Token::Kind::Name;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = Token::Kind::Nat;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if ((c == '-' || c == '=') && i + 1 < text.size() && text[i + 1] == '>') {
      tok.text = std::string(text.substr(i, 2));
      advance(2);
    } else if (std::string_view(";*()[],:").find(c) != std::string_view::npos) {
      tok.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(tok));
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::accept_symbol(std::string_view s) {
  if (peek().kind == Token::Kind::Symbol && peek().text == s) {
    next();
    return true;
  }
  return false;
}

bool TokenStream::accept_name(std::string_view s) {
  if (peek().kind == Token::Kind::Name && peek().text == s) {
    next();
    return true;
  }
  return false;
}

void TokenStream::expect_symbol(std::string_view s) {
  if (!accept_symbol(s)) fail("expected '" + std::string(s) + "'");
}

std::string TokenStream::expect_name() {
  if (peek().kind != Token::Kind::Name) fail("expected a name");
  return next().text;
}

std::size_t TokenStream::expect_nat() {
  if (peek().kind != Token::Kind::Nat) fail("expected a number");
  const std::string text = next().text;
  if (text.size() > 6) fail("number too large");
  return static_cast<std::size_t>(std::stoul(text));
}

Word TokenStream::expect_word() {
  if (peek().kind == Token::Kind::Nat) return nat(expect_nat());
  if (!accept_symbol("[")) fail("expected an object word");
  Word w;
  w.push_back(expect_name());
  while (accept_symbol(",")) w.push_back(expect_name());
  expect_symbol("]");
  return w;
}

void TokenStream::fail(const std::string& message) const {
  const Token& t = peek();
  std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(message + ", found " + found, t.line, t.column);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string_view strip_comment(std::string_view line) {
  std::size_t k = line.find('#');
  return k == std::string_view::npos ? line : line.substr(0, k);
}

}  // namespace lhg::detail
