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

#include <map>
#include <optional>
#include <string>

#include "spl/database.hpp"
#include "spl/sql/ast.hpp"
#include "spl/text.hpp"

namespace spl::sql {

//! Kind of each host parameter in scope; Kind::Null means "any kind".
using ParamKinds = std::map<std::string, Kind, ILess>;

//! Kind a declared parameter accepts at check time: NUMBER is Number,
//! everything else (CHAR, TEXT, CODE) accepts Text or Code values.
Kind param_check_kind(const TypeName& type);

//! Output schema of a query. Throws positioned errors: 42P01 unknown table,
//! 42703 unknown column, 42701 duplicate column, 42804 kind mismatch,
//! 42883 unknown function, 42P13 wrong arity, 42P02 unbound parameter.
Schema check_query(const Query& query, const Database& db, const ParamKinds& params);

//! Kind of an expression evaluated over rows of `scope`. Kind::Null is
//! returned when the kind is only known at run time.
Kind check_expr(const Expr& expr, const Schema& scope, const ParamKinds& params);

//! Statement-level check against the catalog. Returns the output schema
//! for queries; nothing for other statements. Procedure bodies are checked
//! with their declared parameters; calls only check the arguments.
std::optional<Schema> check(const Statement& statement, const Database& db, const ParamKinds& params);

}  // namespace spl::sql
