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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spl/database.hpp"
#include "spl/sql/ast.hpp"
#include "spl/text.hpp"

namespace spl::sql {

//! Host-parameter values by name (case-insensitive, without the colon).
using Bindings = std::map<std::string, Value, ILess>;

//! Result of one statement. Queries and calls carry a relation, INSERT a
//! row count; the SQLSTATE is '02000' for an empty relation, '00000'
//! otherwise. Failures are thrown as spl::Error.
struct Outcome {
  enum class Type { Rows, Count, Done };
  Type type = Type::Done;
  std::string sqlstate{sqlstate::kSuccess};
  std::optional<Relation> relation;
  std::size_t count = 0;
  //! Short tag such as "INSERT 3" or "PROCEDURE INETER_A_B".
  std::string message;
};

//! Queries and calls never modify the database.
bool is_read_only(const Statement& statement);

//! Checks then runs a statement against `db`.
Outcome execute(const Statement& statement, Database& db, const Bindings& bindings = {});
//! Read-only statements only (42601 otherwise).
Outcome execute_read(const Statement& statement, const Database& db, const Bindings& bindings = {});

//! Runs a checked query.
Relation evaluate_query(const Query& query, const Database& db, const Bindings& bindings);

//! Binds positional arguments to the procedure's parameters and runs its
//! body. Throws 42883 for an unknown procedure, 42P13 on arity mismatch and
//! 42804 when an argument's kind does not suit its declared type.
Outcome call_procedure(const Database& db, std::string_view name, const std::vector<Value>& args);

//! Reads run on the current snapshot; writes go through the single writer
//! and are published only if they succeed.
Outcome run(SnapshotStore& store, const Statement& statement, const Bindings& bindings = {});

//! Parses and runs statements one at a time, handing each outcome to
//! `sink`. Stops at the first error by rethrowing it.
void run_script(SnapshotStore& store, std::string_view text,
                const std::function<void(const Statement&, const Outcome&)>& sink);

}  // namespace spl::sql
