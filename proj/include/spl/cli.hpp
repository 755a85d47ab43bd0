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

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "spl/database.hpp"
#include "spl/sql/executor.hpp"

namespace spl::cli {

enum class OutputMode { Table, Tsv, Json };

//! Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kStatementError = 1;
inline constexpr int kUsageError = 2;

struct Options {
  std::filesystem::path db;
  OutputMode output = OutputMode::Table;
};

//! Renders one statement result in the chosen mode.
void print_outcome(const sql::Outcome& outcome, OutputMode mode, std::ostream& out);
//! "ERROR <state> at line L, column C: message".
void print_error(const Error& error, std::ostream& err);

//! Runs a `;`-separated script, stopping at the first failing statement.
int run_file(const Options& opts, const std::filesystem::path& file, std::ostream& out, std::ostream& err);
int run_text(const Options& opts, std::string_view text, std::ostream& out, std::ostream& err);

//! Stores every entity of a geometry JSON file; bad entries are reported
//! and skipped. Returns kStatementError when any entry failed.
int import_file(const Options& opts, const std::filesystem::path& file, std::optional<int> level, std::ostream& out,
                std::ostream& err);

//! Line-oriented session: statements run once a line ends one with `;`.
//! `\d` lists tables, `\q` quits.
int repl(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err, bool interactive);

//! Full command line handling (repl | run | import | serve). `SPL_DB` is
//! used when --db is not given.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace spl::cli
