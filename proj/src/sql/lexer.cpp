/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "spl/sql/lexer.hpp"

#include <algorithm>
#include <array>

#include "spl/quadcode.hpp"
#include "spl/text.hpp"
#include "spl/value.hpp"

namespace spl::sql {

namespace {

constexpr std::array<std::string_view, 21> kKeywords = {
    "SELECT", "FROM", "WHERE", "INTERSECT", "MINUS", "EXCEPT", "UNION", "CREATE", "TABLE", "INSERT", "INTO",
    "VALUES", "PROCEDURE", "CALL", "SQLSTATE", "AND", "OR", "NOT", "NULL", "TRUE", "FALSE"};

bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.pos = here();
      if (i_ >= src_.size()) {
        t.kind = TokenKind::End;
        t.end = t.pos;
        out.push_back(std::move(t));
        return out;
      }
      lex_one(t);
      t.end = here();
      out.push_back(std::move(t));
    }
  }

 private:
  SourcePos here() const { return {line_, col_}; }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0'; }
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  [[noreturn]] void fail(const std::string& msg, SourcePos at) const {
    throw Error(sqlstate::kSyntaxError, msg, at);
  }

  void skip_blank() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '-' && peek(1) == '-') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string quoted(SourcePos start) {
    advance();  // opening quote
    std::string body;
    for (;;) {
      if (i_ >= src_.size()) fail("unterminated string literal", start);
      if (src_[i_] == '\'') {
        if (peek(1) == '\'') {
          body += '\'';
          advance();
          advance();
          continue;
        }
        advance();
        return body;
      }
      body += src_[i_];
      advance();
    }
  }

  void lex_one(Token& t) {
    const char c = peek();
    const SourcePos start = here();
    if ((c == 'Q' || c == 'q') && peek(1) == '\'') {
      advance();
      t.kind = TokenKind::Quadcode;
      t.text = quoted(start);
      try {
        Quadcode::parse(t.text);
      } catch (const Error& e) {
        fail(std::string("invalid quadcode literal: ") + e.what(), start);
      }
      return;
    }
    if (is_ident_start(c)) {
      std::size_t b = i_;
      while (i_ < src_.size() && is_ident_char(src_[i_])) advance();
      std::string word(src_.substr(b, i_ - b));
      if (is_keyword(word)) {
        t.kind = TokenKind::Keyword;
        t.text = to_upper(word);
      } else {
        t.kind = TokenKind::Identifier;
        t.text = std::move(word);
      }
      return;
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
      std::size_t b = i_;
      while (is_digit(peek())) advance();
      if (peek() == '.') {
        advance();
        while (is_digit(peek())) advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        const std::size_t sign = (peek(1) == '+' || peek(1) == '-') ? 1 : 0;
        if (!is_digit(peek(1 + sign))) fail("malformed exponent in number", here());
        advance();
        if (sign) advance();
        while (is_digit(peek())) advance();
      }
      if (is_ident_start(peek())) fail("identifier character directly after number", here());
      t.kind = TokenKind::Number;
      t.text = std::string(src_.substr(b, i_ - b));
      try {
        parse_number(t.text);
      } catch (const Error&) {
        fail("number out of range: " + t.text, start);
      }
      return;
    }
    if (c == '\'') {
      t.kind = TokenKind::String;
      t.text = quoted(start);
      return;
    }
    if (c == ':') {
      advance();
      if (!is_ident_start(peek())) fail("expected a parameter name after ':'", start);
      std::size_t b = i_;
      while (i_ < src_.size() && is_ident_char(src_[i_])) advance();
      t.kind = TokenKind::HostParam;
      t.text = std::string(src_.substr(b, i_ - b));
      return;
    }
    static constexpr std::array<std::string_view, 4> kTwo = {"<>", "!=", "<=", ">="};
    for (std::string_view two : kTwo) {
      if (src_.substr(i_, 2) == two) {
        advance();
        advance();
        t.kind = TokenKind::Punct;
        t.text = std::string(two);
        return;
      }
    }
    static constexpr std::string_view kOne = "(),;*=<>+-/";
    if (kOne.find(c) != std::string_view::npos) {
      advance();
      t.kind = TokenKind::Punct;
      t.text = std::string(1, c);
      return;
    }
    const unsigned char u = static_cast<unsigned char>(c);
    std::string shown = (u >= 0x20 && u < 0x7f) ? std::string(1, c) : "\\x" + std::string(1, "0123456789abcdef"[u >> 4]) +
                                                                          std::string(1, "0123456789abcdef"[u & 15]);
    fail("illegal character '" + shown + "'", start);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Quadcode: return "quadcode literal";
    case TokenKind::HostParam: return "host parameter";
    case TokenKind::Punct: return "punctuation";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  return std::any_of(kKeywords.begin(), kKeywords.end(), [&](std::string_view k) { return iequals(k, word); });
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace spl::sql
