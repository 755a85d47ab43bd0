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

#pragma once

#include <string_view>
#include <vector>

#include "spl/sql/ast.hpp"
#include "spl/sql/lexer.hpp"

namespace spl::sql {

//! Syntax error (42601). `at_end` is set when the input ran out before the
//! statement was complete, which lets a prompt keep reading.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourcePos pos, bool at_end)
      : Error(sqlstate::kSyntaxError, message, pos), at_end_(at_end) {}
  bool at_end() const noexcept { return at_end_; }

 private:
  bool at_end_;
};

//! Statement-at-a-time parser over a script. Statements are separated by
//! `;`; the last one may omit it.
class Parser {
 public:
  //! Maximum nesting of parentheses and subqueries.
  static constexpr int kMaxDepth = 256;

  //! Tokenises eagerly; lexical errors surface from the constructor.
  explicit Parser(std::string_view text);

  //! True once only separators remain.
  bool done();
  Statement next();

 private:
  friend class ParserImpl;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

//! Exactly one statement (a trailing `;` is optional).
Statement parse_statement(std::string_view text);
std::vector<Statement> parse_script(std::string_view text);
//! A query on its own, for tests and tools.
Query parse_query(std::string_view text);

//! True when `text` is a prefix of a valid script that needs more input:
//! an open string literal, or a syntax error at the end of input.
bool is_incomplete(std::string_view text);

}  // namespace spl::sql
