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
#include <string>
#include <string_view>

#include "spl/database.hpp"

namespace spl {

//! On-disk layout: `catalog.json` (window, default level, schemas,
//! procedure texts) plus one `<table>.tsv` per table, rows in canonical
//! order. Every file is written to a temporary name and renamed into place.
//! When `previous` is given, only tables whose contents changed since that
//! snapshot are rewritten. The catalog is always written last.
void save_db(const Database& db, const std::filesystem::path& dir, const Database* previous = nullptr);

//! Throws 58030 naming the offending file on missing or corrupt input.
Database load_db(const std::filesystem::path& dir);

//! Loads `dir` when it holds a catalog, otherwise creates it with the
//! standard tables.
Database open_or_create(const std::filesystem::path& dir, Window window = {},
                        int default_level = Database::kDefaultLevel);

//! Makes every committed write to `store` save its changed tables to `dir`
//! before the new snapshot is published.
void persist_to(SnapshotStore& store, const std::filesystem::path& dir);

//! One TSV field: Null is empty, the root code is "@", empty text is "\E",
//! and backslash, tab, newline and carriage return are escaped.
std::string encode_field(const Value& value);
//! Inverse of encode_field for a column of the given kind. Throws 42804.
Value decode_field(std::string_view field, Kind kind);

}  // namespace spl
