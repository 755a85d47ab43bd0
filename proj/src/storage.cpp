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

#include "spl/storage.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "spl/error.hpp"

namespace spl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "splsql-db";
constexpr int kVersion = 1;

Error io_error(const fs::path& file, const std::string& msg) {
  return Error(sqlstate::kIoError, file.string() + ": " + msg);
}

void write_atomic(const fs::path& target, const std::string& content) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error(tmp, "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw io_error(tmp, "write failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw io_error(target, "rename failed: " + ec.message());
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw io_error(file, "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string table_file(const std::string& name) { return name + ".tsv"; }

std::string kind_word(Kind k) { return std::string(to_string(k)); }

std::string encode_table(const Relation& rel) {
  std::string out;
  const Schema& s = rel.schema();
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "\t" : "") + s[i].name;
  out += '\n';
  for (const Row& r : rel.rows()) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += '\t';
      out += encode_field(r[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  for (;;) {
    const std::size_t e = line.find('\t', b);
    out.push_back(line.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
    if (e == std::string_view::npos) return out;
    b = e + 1;
  }
}

Relation decode_table(const fs::path& file, const Schema& schema) {
  const std::string body = read_file(file);
  Relation rel(schema);
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < body.size()) {
    std::size_t nl = body.find('\n', pos);
    if (nl == std::string::npos) nl = body.size();
    const std::string_view line(body.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    const auto fields = split_tabs(line);
    if (fields.size() != schema.size()) {
      throw io_error(file, "line " + std::to_string(line_no) + ": expected " + std::to_string(schema.size()) +
                               " fields, found " + std::to_string(fields.size()));
    }
    if (line_no == 1) {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] != schema[i].name) throw io_error(file, "header does not match the catalog schema");
      }
      continue;
    }
    Row row;
    try {
      for (std::size_t i = 0; i < fields.size(); ++i) row.push_back(decode_field(fields[i], schema[i].kind));
    } catch (const Error& e) {
      throw io_error(file, "line " + std::to_string(line_no) + ": " + e.what());
    }
    rel.insert(std::move(row));
  }
  if (line_no == 0) throw io_error(file, "missing header line");
  return rel;
}

}  // namespace

std::string encode_field(const Value& value) {
  switch (value.kind()) {
    case Kind::Null: return "";
    case Kind::Code: return value.as_code().text();
    case Kind::Number: return format_number(value.as_number());
    case Kind::Bool: return value.as_bool() ? "true" : "false";
    case Kind::Text: break;
  }
  const std::string& s = value.as_text();
  if (s.empty()) return "\\E";
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

Value decode_field(std::string_view field, Kind kind) {
  if (field.empty()) return Value::null();
  switch (kind) {
    case Kind::Code: return Value::code(Quadcode::parse_text(field));
    case Kind::Number: return Value::number(parse_number(field));
    case Kind::Text: break;
    default: throw Error(sqlstate::kDatatypeMismatch, "column kind " + kind_word(kind) + " cannot be stored");
  }
  if (field == "\\E") return Value::text("");
  std::string out;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out += field[i];
      continue;
    }
    if (++i == field.size()) throw Error(sqlstate::kDatatypeMismatch, "dangling escape in text field");
    switch (field[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: throw Error(sqlstate::kDatatypeMismatch, std::string("unknown escape \\") + field[i]);
    }
  }
  return Value::text(std::move(out));
}

void save_db(const Database& db, const fs::path& dir, const Database* previous) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw io_error(dir, "cannot create directory: " + ec.message());

  const Window& w = db.transform().window();
  json catalog = {{"format", kFormat},
                  {"version", kVersion},
                  {"window", {w.min_x, w.min_y, w.max_x, w.max_y}},
                  {"default_level", db.default_level()},
                  {"tables", json::array()},
                  {"procedures", json::array()}};
  for (const std::string& name : db.table_names()) {
    const auto rel = db.table_ptr(name);
    json cols = json::array();
    for (const Column& c : rel->schema().columns()) cols.push_back({{"name", c.name}, {"kind", kind_word(c.kind)}});
    catalog["tables"].push_back({{"name", name}, {"file", table_file(name)}, {"columns", cols}});

    const bool unchanged = previous && previous->has_table(name) && previous->table_ptr(name) == rel &&
                           fs::exists(dir / table_file(name));
    if (!unchanged) write_atomic(dir / table_file(name), encode_table(*rel));
  }
  for (const auto& [name, text] : db.procedures()) catalog["procedures"].push_back({{"name", name}, {"text", text}});
  write_atomic(dir / "catalog.json", catalog.dump(2) + "\n");
}

Database load_db(const fs::path& dir) {
  const fs::path cat_path = dir / "catalog.json";
  json cat;
  try {
    cat = json::parse(read_file(cat_path));
  } catch (const json::exception& e) {
    throw io_error(cat_path, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (cat.at("format").get<std::string>() != kFormat) throw io_error(cat_path, "not a database catalog");
    if (cat.at("version").get<int>() != kVersion) throw io_error(cat_path, "unsupported catalog version");
    const auto& w = cat.at("window");
    if (!w.is_array() || w.size() != 4) throw io_error(cat_path, "window must be [min_x, min_y, max_x, max_y]");
    Database db(Window{w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()},
                cat.at("default_level").get<int>());
    for (const json& t : cat.at("tables")) {
      const std::string name = t.at("name").get<std::string>();
      std::vector<Column> cols;
      for (const json& c : t.at("columns")) {
        cols.push_back(Column{c.at("name").get<std::string>(), parse_column_kind(c.at("kind").get<std::string>())});
      }
      Schema schema(std::move(cols));
      db.create_table(name, schema);
      const std::string file = t.at("file").get<std::string>();
      if (file != table_file(name)) throw io_error(cat_path, "unexpected file name '" + file + "' for table " + name);
      db.replace_table(name, decode_table(dir / file, schema));
    }
    for (const json& p : cat.at("procedures")) {
      db.define_procedure(p.at("name").get<std::string>(), p.at("text").get<std::string>());
    }
    return db;
  } catch (const json::exception& e) {
    throw io_error(cat_path, std::string("malformed catalog: ") + e.what());
  } catch (const Error& e) {
    if (e.state() == sqlstate::kIoError) throw;
    throw io_error(cat_path, e.what());
  }
}

void persist_to(SnapshotStore& store, const fs::path& dir) {
  store.set_commit_hook([dir](const Database& before, const Database& after) { save_db(after, dir, &before); });
}

Database open_or_create(const fs::path& dir, Window window, int default_level) {
  if (fs::exists(dir / "catalog.json")) return load_db(dir);
  Database db = Database::standard(window, default_level);
  save_db(db, dir);
  return db;
}

}  // namespace spl
