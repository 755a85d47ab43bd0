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

#include "spl/relation.hpp"

#include <algorithm>
#include <iterator>

#include "spl/error.hpp"
#include "spl/text.hpp"

namespace spl {

std::optional<std::size_t> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (iequals(columns_[i].name, name)) return i;
  }
  return std::nullopt;
}

bool Schema::compatible_with(const Schema& other) const {
  if (columns_.size() != other.columns_.size()) return false;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].kind != other.columns_[i].kind) return false;
  }
  return true;
}

Relation::Relation(Schema schema) : schema_(std::move(schema)) {
  if (schema_.size() == 0) throw Error(sqlstate::kInvalidDefinition, "a relation needs at least one column");
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    const Column& c = schema_[i];
    if (c.kind != Kind::Text && c.kind != Kind::Number && c.kind != Kind::Code) {
      throw Error(sqlstate::kDatatypeMismatch, "column '" + c.name + "' has no storable kind");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (iequals(schema_[j].name, c.name)) {
        throw Error(sqlstate::kDuplicateColumn, "duplicate column name '" + c.name + "'");
      }
    }
  }
}

bool Relation::insert(Row row) {
  if (row.size() != schema_.size()) {
    throw Error(sqlstate::kDatatypeMismatch, "row has " + std::to_string(row.size()) +
                                                 " values, relation has " + std::to_string(schema_.size()) +
                                                 " columns");
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i].is_null() && row[i].kind() != schema_[i].kind) {
      throw Error(sqlstate::kDatatypeMismatch,
                  "column '" + schema_[i].name + "' expects " + std::string(to_string(schema_[i].kind)) +
                      ", got " + std::string(to_string(row[i].kind())));
    }
  }
  return rows_.insert(std::move(row)).second;
}

std::size_t Relation::erase_if(const std::function<bool(const Row&)>& predicate) {
  return std::erase_if(rows_, predicate);
}

Relation project(const Relation& rel, std::span<const std::size_t> indices) {
  std::vector<Column> cols;
  for (std::size_t i : indices) cols.push_back(rel.schema()[i]);
  Relation out{Schema(std::move(cols))};
  for (const Row& r : rel.rows()) {
    Row projected;
    projected.reserve(indices.size());
    for (std::size_t i : indices) projected.push_back(r[i]);
    out.insert(std::move(projected));
  }
  return out;
}

Relation select(const Relation& rel, const RowPredicate& predicate, std::span<const std::string> columns) {
  std::vector<std::size_t> indices;
  if (columns.empty()) {
    for (std::size_t i = 0; i < rel.schema().size(); ++i) indices.push_back(i);
  } else {
    for (const std::string& name : columns) {
      const auto idx = rel.schema().find(name);
      if (!idx) throw Error(sqlstate::kUndefinedColumn, "unknown column '" + name + "'");
      indices.push_back(*idx);
    }
  }
  Relation filtered{rel.schema()};
  for (const Row& r : rel.rows()) {
    if (!predicate || predicate(r)) filtered.insert(r);
  }
  return project(filtered, indices);
}

Schema concat_schemas(const Schema& a, const Schema& b) {
  std::vector<Column> cols = a.columns();
  for (const Column& c : b.columns()) {
    Column renamed = c;
    Schema current(cols);
    for (int suffix = 2; current.find(renamed.name); ++suffix) {
      renamed.name = c.name + "_" + std::to_string(suffix);
    }
    cols.push_back(std::move(renamed));
  }
  return Schema(std::move(cols));
}

Relation cross_product(const Relation& a, const Relation& b) {
  Relation out{concat_schemas(a.schema(), b.schema())};
  for (const Row& x : a.rows()) {
    for (const Row& y : b.rows()) {
      Row r = x;
      r.insert(r.end(), y.begin(), y.end());
      out.insert(std::move(r));
    }
  }
  return out;
}

namespace {

void require_compatible(const Relation& a, const Relation& b, const char* op) {
  if (!a.schema().compatible_with(b.schema())) {
    throw Error(sqlstate::kDatatypeMismatch, std::string(op) + " operands have incompatible schemas");
  }
}

template <typename Algorithm>
Relation combine(const Relation& a, const Relation& b, Algorithm algorithm) {
  Relation out{a.schema()};
  std::vector<Row> rows;
  algorithm(a.rows().begin(), a.rows().end(), b.rows().begin(), b.rows().end(), std::back_inserter(rows));
  for (Row& r : rows) out.insert(std::move(r));
  return out;
}

}  // namespace

Relation rel_union(const Relation& a, const Relation& b) {
  require_compatible(a, b, "UNION");
  return combine(a, b, [](auto... args) { return std::set_union(args...); });
}

Relation rel_intersect(const Relation& a, const Relation& b) {
  require_compatible(a, b, "INTERSECT");
  return combine(a, b, [](auto... args) { return std::set_intersection(args...); });
}

Relation rel_minus(const Relation& a, const Relation& b) {
  require_compatible(a, b, "MINUS");
  return combine(a, b, [](auto... args) { return std::set_difference(args...); });
}

}  // namespace spl
