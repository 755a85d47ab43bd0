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

#include "spl/database.hpp"

#include <algorithm>
#include <cctype>

#include "spl/error.hpp"

namespace spl {

namespace {

Error unknown_table(std::string_view name) {
  return Error(sqlstate::kUndefinedTable, "unknown table '" + std::string(name) + "'");
}

void check_level(int level) {
  if (level < 0 || level > Quadcode::kMaxLevel) {
    throw domain_error("level " + std::to_string(level) + " outside [0, " +
                       std::to_string(Quadcode::kMaxLevel) + "]");
  }
}

}  // namespace

Database::Database(Window window, int default_level) : transform_(window), default_level_(default_level) {
  check_level(default_level);
}

Database Database::standard(Window window, int default_level) {
  Database db(window, default_level);
  db.create_table("POINTS", Schema{{"POINT", Kind::Text}, {"CODE", Kind::Code}});
  db.create_table("LINES", Schema{{"LINE", Kind::Text}, {"CODE", Kind::Code}});
  db.create_table("AREAS", Schema{{"AREA", Kind::Text}, {"CODE", Kind::Code}});
  return db;
}

void Database::create_table(const std::string& name, Schema schema) {
  // Names double as file names on disk, so keep them to identifier syntax.
  const bool ok = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0])) &&
                  std::all_of(name.begin(), name.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                  });
  if (!ok) throw Error(sqlstate::kInvalidDefinition, "invalid table name '" + name + "'");
  if (has_table(name)) throw Error(sqlstate::kDuplicateTable, "table '" + name + "' already exists");
  tables_.emplace(name, std::make_shared<const Relation>(std::move(schema)));
}

bool Database::has_table(std::string_view name) const { return tables_.find(name) != tables_.end(); }

const Relation& Database::table(std::string_view name) const { return *table_ptr(name); }

std::shared_ptr<const Relation> Database::table_ptr(std::string_view name) const {
  const auto it = tables_.find(name);
  if (it == tables_.end()) throw unknown_table(name);
  return it->second;
}

const std::string& Database::table_name(std::string_view name) const {
  const auto it = tables_.find(name);
  if (it == tables_.end()) throw unknown_table(name);
  return it->first;
}

std::vector<std::string> Database::table_names() const {
  std::vector<std::string> out;
  for (const auto& [name, rel] : tables_) out.push_back(name);
  return out;
}

Relation& Database::mutable_table(std::string_view name) {
  const auto it = tables_.find(name);
  if (it == tables_.end()) throw unknown_table(name);
  if (it->second.use_count() > 1) it->second = std::make_shared<const Relation>(*it->second);
  // Sole owner now; the const is only a sharing guarantee.
  return const_cast<Relation&>(*it->second);
}

std::size_t Database::insert_rows(std::string_view name, std::vector<Row> rows) {
  Relation next = table(name);
  std::size_t added = 0;
  for (Row& r : rows) added += next.insert(std::move(r)) ? 1 : 0;
  if (added > 0) mutable_table(name) = std::move(next);
  return added;
}

std::size_t Database::erase_rows(std::string_view name, const RowPredicate& predicate) {
  const Relation& current = table(name);
  if (std::none_of(current.rows().begin(), current.rows().end(), predicate)) return 0;
  return mutable_table(name).erase_if(predicate);
}

void Database::replace_table(std::string_view name, Relation rel) {
  if (!(table(name).schema() == rel.schema())) {
    throw Error(sqlstate::kDatatypeMismatch, "replacement for '" + std::string(name) + "' has a different schema");
  }
  const auto it = tables_.find(name);
  it->second = std::make_shared<const Relation>(std::move(rel));
}

std::string Database::entity_name_column(std::string_view table_name) const {
  const Relation& rel = table(table_name);
  const Schema& s = rel.schema();
  if (s.size() != 2 || s[0].kind != Kind::Text || s[1].kind != Kind::Code) {
    throw Error(sqlstate::kDatatypeMismatch,
                "table '" + std::string(table_name) + "' is not an entity table (name TEXT, CODE CODE)");
  }
  return s[0].name;
}

StoreResult Database::store_entity(const Entity& entity, std::optional<int> level) {
  const int lvl = level.value_or(default_level_);
  check_level(lvl);
  if (entity.name.empty()) throw Error(sqlstate::kInvalidGeometry, "entity name must not be empty");
  const std::string table_name(table_for(entity.kind));
  entity_name_column(table_name);
  const std::vector<Quadcode> codes = encode_entity(transform_, entity, lvl);

  StoreResult result{table_name, codes.size(), std::nullopt};
  delete_entity(table_name, entity.name);
  std::vector<Row> rows;
  rows.reserve(codes.size());
  for (const Quadcode c : codes) rows.push_back(Row{Value::text(entity.name), Value::code(c)});
  insert_rows(table_name, std::move(rows));
  if (codes.empty()) result.warning = "entity '" + entity.name + "' rasterised to no cells";
  return result;
}

std::size_t Database::delete_entity(std::string_view table_name, std::string_view name) {
  entity_name_column(table_name);
  return erase_rows(table_name, [&](const Row& r) { return !r[0].is_null() && r[0].as_text() == name; });
}

std::vector<Quadcode> Database::entity_codes(std::string_view table_name, std::string_view name) const {
  entity_name_column(table_name);
  std::vector<Quadcode> out;
  for (const Row& r : table(table_name).rows()) {
    if (!r[0].is_null() && r[0].as_text() == name && !r[1].is_null()) out.push_back(r[1].as_code());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Database::define_procedure(const std::string& name, std::string text) {
  if (has_procedure(name)) {
    throw Error(sqlstate::kDuplicateRoutine, "procedure '" + name + "' already exists");
  }
  procedures_.emplace(name, std::move(text));
}

bool Database::has_procedure(std::string_view name) const { return procedures_.find(name) != procedures_.end(); }

const std::string& Database::procedure_text(std::string_view name) const {
  const auto it = procedures_.find(name);
  if (it == procedures_.end()) {
    throw Error(sqlstate::kUndefinedRoutine, "unknown procedure '" + std::string(name) + "'");
  }
  return it->second;
}

Relation lines_through_codes(const Database& db, std::span<const Quadcode> codes) {
  const Relation& lines = db.table("LINES");
  // Codes per line, then a superset test against the sorted divisor.
  std::vector<Quadcode> divisor(codes.begin(), codes.end());
  std::sort(divisor.begin(), divisor.end());
  divisor.erase(std::unique(divisor.begin(), divisor.end()), divisor.end());

  Relation out{Schema{{lines.schema()[0].name, Kind::Text}}};
  auto it = lines.rows().begin();
  while (it != lines.rows().end()) {
    const Value name = (*it)[0];
    std::vector<Quadcode> have;
    for (; it != lines.rows().end() && (*it)[0] == name; ++it) {
      if (!(*it)[1].is_null()) have.push_back((*it)[1].as_code());
    }
    // Rows are ordered by (name, code), so `have` is already sorted.
    if (std::includes(have.begin(), have.end(), divisor.begin(), divisor.end())) out.insert(Row{name});
  }
  return out;
}

LookupResult lines_through_point(const Database& db, std::string_view point_name) {
  const Relation& points = db.table("POINTS");
  bool known = false;
  std::vector<Quadcode> codes;
  for (const Row& r : points.rows()) {
    if (r[0].is_null() || r[0].as_text() != point_name) continue;
    known = true;
    if (!r[1].is_null()) codes.push_back(r[1].as_code());
  }
  if (!known) {
    return LookupResult{Relation{Schema{{db.table("LINES").schema()[0].name, Kind::Text}}},
                        "unknown point '" + std::string(point_name) + "'"};
  }
  // A point with no codes divides vacuously: every line qualifies.
  return LookupResult{lines_through_codes(db, codes), std::nullopt};
}

SnapshotStore::SnapshotStore(Database db) : current_(std::make_shared<const Database>(std::move(db))) {}

std::shared_ptr<const Database> SnapshotStore::snapshot() const {
  std::lock_guard<std::mutex> lock(pointer_mutex_);
  return current_;
}

void SnapshotStore::set_commit_hook(CommitHook hook) {
  std::lock_guard<std::mutex> writer(write_mutex_);
  hook_ = std::move(hook);
}

void SnapshotStore::publish(std::shared_ptr<const Database> db) {
  std::lock_guard<std::mutex> lock(pointer_mutex_);
  current_ = std::move(db);
}

}  // namespace spl
