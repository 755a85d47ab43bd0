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

#include "spl/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "spl/geometry_io.hpp"
#include "spl/service.hpp"
#include "spl/sql/lexer.hpp"
#include "spl/sql/parser.hpp"
#include "spl/storage.hpp"

namespace spl::cli {

namespace {

constexpr const char* kDefaultDb = "spl_db";

bool read_file(const std::filesystem::path& file, std::string& text, std::ostream& err) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << "cannot read " << file.string() << "\n";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

std::unique_ptr<SnapshotStore> open_store(const Options& opts, std::ostream& err,
                                          std::optional<Window> window = std::nullopt) {
  try {
    auto store = std::make_unique<SnapshotStore>(open_or_create(opts.db, window.value_or(Window{})));
    persist_to(*store, opts.db);
    return store;
  } catch (const Error& e) {
    print_error(e, err);
    return nullptr;
  }
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void list_tables(const Database& db, std::ostream& out) {
  for (const std::string& name : db.table_names()) {
    const Relation& rel = db.table(name);
    out << name << " (";
    for (std::size_t i = 0; i < rel.schema().size(); ++i) {
      out << (i ? ", " : "") << rel.schema()[i].name << " " << to_upper(std::string(to_string(rel.schema()[i].kind)));
    }
    out << ")  " << rel.size() << (rel.size() == 1 ? " row\n" : " rows\n");
  }
  for (const auto& [name, text] : db.procedures()) out << "procedure " << name << "\n";
}

//! True when the buffer holds at least one whole statement ending in ';'.
bool statement_ready(const std::string& buffer) {
  try {
    const auto toks = sql::tokenize(buffer);
    if (toks.size() < 2) return false;
    const sql::Token& last = toks[toks.size() - 2];
    if (last.kind != sql::TokenKind::Punct || last.text != ";") return false;
  } catch (const Error&) {
    return !sql::is_incomplete(buffer);
  }
  return !sql::is_incomplete(buffer);
}

bool only_blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

}  // namespace

void print_outcome(const sql::Outcome& o, OutputMode mode, std::ostream& out) {
  if (mode == OutputMode::Json) {
    out << outcome_json(o).dump() << "\n";
    return;
  }
  if (!o.relation) {
    if (mode == OutputMode::Tsv) {
      out << "# " << o.message << "\n# SQLSTATE " << o.sqlstate << "\n";
    } else {
      out << o.message << "\nSQLSTATE " << o.sqlstate << "\n";
    }
    return;
  }
  const Relation& rel = *o.relation;
  const Schema& s = rel.schema();
  if (mode == OutputMode::Tsv) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "\t" : "") << s[i].name;
    out << "\n";
    for (const Row& r : rel.rows()) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "\t" : "") << encode_field(r[i]);
      out << "\n";
    }
    out << "# SQLSTATE " << o.sqlstate << "\n";
    return;
  }
  std::vector<std::size_t> width(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) width[i] = s[i].name.size();
  for (const Row& r : rel.rows()) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].to_string().size());
  }
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " | " : "") << pad(s[i].name, i + 1 < s.size() ? width[i] : 0);
  out << "\n";
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "-+-" : "") << std::string(width[i], '-');
  out << "\n";
  for (const Row& r : rel.rows()) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << (i ? " | " : "") << pad(r[i].is_null() ? "NULL" : r[i].to_string(), i + 1 < r.size() ? width[i] : 0);
    }
    out << "\n";
  }
  out << "(" << rel.size() << (rel.size() == 1 ? " row)" : " rows)") << "\nSQLSTATE " << o.sqlstate << "\n";
}

void print_error(const Error& e, std::ostream& err) {
  err << "ERROR " << e.state();
  if (e.position()) err << " at line " << e.position()->line << ", column " << e.position()->column;
  err << ": " << e.what() << "\n";
}

int run_text(const Options& opts, std::string_view text, std::ostream& out, std::ostream& err) {
  auto store = open_store(opts, err);
  if (!store) return kUsageError;
  try {
    sql::run_script(*store, text, [&](const sql::Statement&, const sql::Outcome& o) { print_outcome(o, opts.output, out); });
  } catch (const Error& e) {
    print_error(e, err);
    return kStatementError;
  }
  return kOk;
}

int run_file(const Options& opts, const std::filesystem::path& file, std::ostream& out, std::ostream& err) {
  std::string text;
  if (!read_file(file, text, err)) return kUsageError;
  return run_text(opts, text, out, err);
}

int import_file(const Options& opts, const std::filesystem::path& file, std::optional<int> level, std::ostream& out,
                std::ostream& err) {
  std::string text;
  if (!read_file(file, text, err)) return kUsageError;
  GeometryDocument doc;
  try {
    doc = read_geometry(text);
  } catch (const Error& e) {
    err << file.string() << ": ";
    print_error(e, err);
    return kUsageError;
  }
  auto store = open_store(opts, err, doc.window);
  if (!store) return kUsageError;
  if (doc.window && !(store->snapshot()->transform().window() == *doc.window)) {
    print_error(Error(sqlstate::kOutOfWindow, "file window differs from the database window"), err);
    return kUsageError;
  }
  bool failed = false;
  try {
    store->write([&](Database& db) {
      for (const ImportEntry& entry : doc.entries) {
        if (entry.error) {
          print_error(*entry.error, err);
          failed = true;
          continue;
        }
        const EntityRequest& req = *entry.request;
        try {
          const StoreResult r = db.store_entity(req.entity, level ? level : req.level);
          out << req.entity.name << "\t" << r.table << "\t" << r.stored << (r.stored == 1 ? " code\n" : " codes\n");
          if (r.warning) err << "WARNING " << sqlstate::kWarning << ": " << *r.warning << "\n";
        } catch (const Error& e) {
          print_error(Error(e.state(), "entity " + std::to_string(entry.index) + " (" + req.entity.name + "): " +
                                           e.what()),
                      err);
          failed = true;
        }
      }
      return 0;
    });
  } catch (const Error& e) {
    print_error(e, err);
    return kUsageError;
  }
  return failed ? kStatementError : kOk;
}

int repl(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err, bool interactive) {
  auto store = open_store(opts, err);
  if (!store) return kUsageError;
  std::string buffer;
  std::string line;
  auto prompt = [&] {
    if (interactive) out << (only_blank(buffer) ? "spl> " : "...> ") << std::flush;
  };
  auto flush = [&] {
    try {
      sql::run_script(*store, buffer,
                      [&](const sql::Statement&, const sql::Outcome& o) { print_outcome(o, opts.output, out); });
    } catch (const Error& e) {
      print_error(e, err);
    }
    buffer.clear();
  };
  prompt();
  while (std::getline(in, line)) {
    if (only_blank(buffer)) {
      const auto b = line.find_first_not_of(" \t");
      const std::string cmd = b == std::string::npos ? "" : line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
      if (cmd == "\\q") return kOk;
      if (cmd == "\\d") {
        list_tables(*store->snapshot(), out);
        prompt();
        continue;
      }
      if (!cmd.empty() && cmd[0] == '\\') {
        err << "unknown command " << cmd << " (\\d lists tables, \\q quits)\n";
        prompt();
        continue;
      }
    }
    buffer += line;
    buffer += '\n';
    if (statement_ready(buffer)) flush();
    prompt();
  }
  if (!only_blank(buffer)) flush();
  if (interactive) out << "\n";
  return kOk;
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial relational database with a quadtree SQL dialect"};
  app.set_help_all_flag("--help-all");
  std::string db_path;
  std::string output = "table";
  app.add_option("--db", db_path, "database directory (default: $SPL_DB, else ./spl_db)");
  app.add_option("--output", output, "result format")->check(CLI::IsMember({"table", "tsv", "json"}));
  app.require_subcommand(1);

  auto* repl_cmd = app.add_subcommand("repl", "interactive session");
  std::string script;
  auto* run_cmd = app.add_subcommand("run", "run a script of ;-separated statements");
  run_cmd->add_option("file", script, "script file")->required();
  std::string geometry;
  std::optional<int> level;
  auto* import_cmd = app.add_subcommand("import", "store the entities of a geometry JSON file");
  import_cmd->add_option("file", geometry, "geometry file")->required();
  import_cmd->add_option("--level", level, "quadtree level (default: database default)")->check(CLI::Range(0, 16));
  int port = 7474;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "start the HTTP service");
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  Options opts;
  if (!db_path.empty()) {
    opts.db = db_path;
  } else if (const char* env = std::getenv("SPL_DB"); env && *env) {
    opts.db = env;
  } else {
    opts.db = kDefaultDb;
  }
  opts.output = output == "tsv" ? OutputMode::Tsv : output == "json" ? OutputMode::Json : OutputMode::Table;

  if (*repl_cmd) return repl(opts, in, out, err, &in == &std::cin && ::isatty(STDIN_FILENO));
  if (*run_cmd) return run_file(opts, script, out, err);
  if (*import_cmd) return import_file(opts, geometry, level, out, err);
  if (*serve_cmd) {
    try {
      return serve(opts.db, host, port, err) ? kOk : kUsageError;
    } catch (const Error& e) {
      print_error(e, err);
      return kUsageError;
    }
  }
  return kUsageError;
}

}  // namespace spl::cli
