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
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spl/geometry.hpp"
#include "spl/relation.hpp"
#include "spl/text.hpp"

namespace spl {

//! Outcome of storing a geometric entity: number of code rows written, and
//! a warning when the rasterisation came out empty.
struct StoreResult {
  std::string table;
  std::size_t stored = 0;
  std::optional<std::string> warning;
};

//! A catalog of relations over one map window. Relations are shared between
//! copies and cloned on first write, so copying a Database is cheap and the
//! copy is an independent snapshot.
class Database {
 public:
  static constexpr int kDefaultLevel = 8;

  explicit Database(Window window = {}, int default_level = kDefaultLevel);

  //! Catalog with the three standard tables POINTS(POINT, CODE),
  //! LINES(LINE, CODE) and AREAS(AREA, CODE).
  static Database standard(Window window = {}, int default_level = kDefaultLevel);

  const WorldTransform& transform() const noexcept { return transform_; }
  int default_level() const noexcept { return default_level_; }

  //! Throws 42P07 when the name is taken.
  void create_table(const std::string& name, Schema schema);
  bool has_table(std::string_view name) const;
  //! Throws 42P01 for unknown tables.
  const Relation& table(std::string_view name) const;
  std::shared_ptr<const Relation> table_ptr(std::string_view name) const;
  //! Declared spelling of a table name.
  const std::string& table_name(std::string_view name) const;
  std::vector<std::string> table_names() const;

  //! Unions rows into a table; all rows are validated before any is added.
  //! Returns how many were new.
  std::size_t insert_rows(std::string_view name, std::vector<Row> rows);
  std::size_t erase_rows(std::string_view name, const RowPredicate& predicate);
  //! Replaces a table's contents wholesale (same schema required).
  void replace_table(std::string_view name, Relation rel);

  //! Rasterises and stores an entity in its standard table, replacing rows
  //! previously stored under the same name.
  StoreResult store_entity(const Entity& entity, std::optional<int> level = std::nullopt);
  std::size_t delete_entity(std::string_view table, std::string_view name);
  std::vector<Quadcode> entity_codes(std::string_view table, std::string_view name) const;

  //! Procedures are kept as their canonical declaration text.
  void define_procedure(const std::string& name, std::string text);
  bool has_procedure(std::string_view name) const;
  const std::string& procedure_text(std::string_view name) const;
  const std::map<std::string, std::string, ILess>& procedures() const noexcept { return procedures_; }

 private:
  Relation& mutable_table(std::string_view name);
  std::string entity_name_column(std::string_view table) const;

  WorldTransform transform_;
  int default_level_;
  std::map<std::string, std::shared_ptr<const Relation>, ILess> tables_;
  std::map<std::string, std::string, ILess> procedures_;
};

struct LookupResult {
  Relation relation;
  std::optional<std::string> warning;
};

//! LINE names whose stored codes include every code of the named point
//! (relational division). Unknown points give an empty result and a warning.
LookupResult lines_through_point(const Database& db, std::string_view point_name);
//! Division by an explicit divisor; an empty divisor selects every line.
Relation lines_through_codes(const Database& db, std::span<const Quadcode> codes);

//! Single-writer, many-reader holder of the current database snapshot.
//! Readers take a shared pointer and are never blocked by a writer; a write
//! works on a private copy and is published only when it, and the commit
//! hook, complete without throwing.
class SnapshotStore {
 public:
  using CommitHook = std::function<void(const Database& before, const Database& after)>;

  explicit SnapshotStore(Database db);

  std::shared_ptr<const Database> snapshot() const;
  void set_commit_hook(CommitHook hook);

  template <typename Fn>
  auto write(Fn&& fn) {
    std::lock_guard<std::mutex> writer(write_mutex_);
    const std::shared_ptr<const Database> before = snapshot();
    Database next = *before;
    auto result = fn(next);
    if (hook_) hook_(*before, next);
    publish(std::make_shared<const Database>(std::move(next)));
    return result;
  }

 private:
  void publish(std::shared_ptr<const Database> db);

  mutable std::mutex pointer_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const Database> current_;
  CommitHook hook_;
};

}  // namespace spl
