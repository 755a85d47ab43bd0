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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "spl/value.hpp"

namespace spl {

struct Column {
  std::string name;
  Kind kind = Kind::Text;

  friend bool operator==(const Column&, const Column&) = default;
};

class Schema {
 public:
  Schema() = default;
  Schema(std::initializer_list<Column> columns) : columns_(columns) {}
  explicit Schema(std::vector<Column> columns) : columns_(std::move(columns)) {}

  const std::vector<Column>& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return columns_.size(); }
  const Column& operator[](std::size_t i) const { return columns_[i]; }

  //! Case-insensitive lookup.
  std::optional<std::size_t> find(std::string_view name) const;
  //! Same kinds position by position (names may differ).
  bool compatible_with(const Schema& other) const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::vector<Column> columns_;
};

using Row = std::vector<Value>;

//! A schema plus a set of rows. Rows are unique and iterate in canonical
//! order (column by column, values ordered kind first then content).
class Relation {
 public:
  //! Throws 42P16 on an empty schema, 42701 on duplicate column names.
  explicit Relation(Schema schema);

  const Schema& schema() const noexcept { return schema_; }
  const std::set<Row>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  //! Adds a row; false when it was already present. Throws 42804 when the
  //! row does not conform to the schema (Null fits any column).
  bool insert(Row row);
  std::size_t erase_if(const std::function<bool(const Row&)>& predicate);

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  Schema schema_;
  std::set<Row> rows_;
};

using RowPredicate = std::function<bool(const Row&)>;

//! Filters by `predicate` then keeps `columns` (all when empty); duplicates
//! created by the projection collapse. Throws 42703 on an unknown column.
Relation select(const Relation& rel, const RowPredicate& predicate,
                std::span<const std::string> columns = {});
Relation project(const Relation& rel, std::span<const std::size_t> indices);

//! Every concatenation of a row of `a` with a row of `b`. Right-hand column
//! names that collide are renamed col_2, col_3, ...
Relation cross_product(const Relation& a, const Relation& b);
//! Schema of cross_product(a, b).
Schema concat_schemas(const Schema& a, const Schema& b);

//! Set operations; both schemas must be compatible (42804 otherwise). The
//! result carries the left schema.
Relation rel_union(const Relation& a, const Relation& b);
Relation rel_intersect(const Relation& a, const Relation& b);
Relation rel_minus(const Relation& a, const Relation& b);

}  // namespace spl
