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

#include "spl/sql/ast.hpp"

namespace spl::sql {

//! Canonical text. Keywords upper-cased, single spaces, set-operation
//! operands parenthesised unless they are bare table names. Parsing the
//! output gives back an equal tree.
std::string print(const Expr& expr);
std::string print(const Query& query);
//! Includes the terminating ';'.
std::string print(const Statement& statement);
std::string print(const TypeName& type);
//! SQL literal spelling of a value: 'text', Q'digits', numbers, TRUE, NULL.
std::string literal_text(const Value& value);

}  // namespace spl::sql
