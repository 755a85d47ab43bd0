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

// Randomised small databases for the division and intersection checks.

#pragma once

#include <random>
#include <string>

#include "spl/database.hpp"
#include "support/oracles.hpp"

namespace spl::fixture {

struct SmallDb {
  oracle::NamedCodes lines;
  oracle::NamedCodes points;
};

// Up to 8 lines and 1..4 points, codes at levels 1..3 drawn from a small
// pool so that supersets are common.
inline SmallDb random_small_db(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> digit(0, 3);
  std::uniform_int_distribution<int> level(1, 3);
  std::vector<std::string> pool;
  const int pool_size = std::uniform_int_distribution<int>(2, 8)(rng);
  for (int i = 0; i < pool_size; ++i) {
    std::string d;
    for (int k = level(rng); k > 0; --k) d.push_back(static_cast<char>('0' + digit(rng)));
    pool.push_back(d);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  SmallDb db;
  const int nlines = std::uniform_int_distribution<int>(0, 8)(rng);
  for (int i = 0; i < nlines; ++i) {
    auto& codes = db.lines["L" + std::to_string(i)];
    for (int k = std::uniform_int_distribution<int>(1, 6)(rng); k > 0; --k) codes.insert(pool[pick(rng)]);
  }
  const int npoints = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < npoints; ++i) {
    auto& codes = db.points["P" + std::to_string(i)];
    for (int k = std::uniform_int_distribution<int>(1, 3)(rng); k > 0; --k) codes.insert(pool[pick(rng)]);
  }
  return db;
}

inline Database build(const SmallDb& small) {
  Database db = Database::standard();
  auto fill = [&](const char* table, const oracle::NamedCodes& m) {
    std::vector<Row> rows;
    for (const auto& [name, codes] : m) {
      for (const std::string& c : codes) rows.push_back(Row{Value::text(name), Value::code(Quadcode::parse(c))});
    }
    db.insert_rows(table, std::move(rows));
  };
  fill("LINES", small.lines);
  fill("POINTS", small.points);
  return db;
}

}  // namespace spl::fixture
