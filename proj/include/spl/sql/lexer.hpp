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

#include <string>
#include <string_view>
#include <vector>

#include "spl/error.hpp"

namespace spl::sql {

enum class TokenKind { Keyword, Identifier, Number, String, Quadcode, HostParam, Punct, End };

std::string_view to_string(TokenKind kind) noexcept;

//! `text` is the normalised payload: upper-cased keyword, identifier as
//! written, unescaped string contents, quadcode digits, host-param name
//! without the colon, or the punctuation itself.
struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;
  //! Position just past the token.
  SourcePos end;
};

bool is_keyword(std::string_view word);

//! Tokenises a whole input, always ending with an End token. Throws a
//! positioned 42601 error on the first lexical fault.
std::vector<Token> tokenize(std::string_view text);

}  // namespace spl::sql
