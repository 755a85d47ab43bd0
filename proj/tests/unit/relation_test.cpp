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

#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <thread>

#include "spl/database.hpp"
#include "spl/error.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace spl;

namespace {

Row R(const char* name, const char* code) { return Row{Value::text(name), Value::code(Quadcode::parse(code))}; }

Relation lines_rel(std::initializer_list<Row> rows) {
  Relation r{Schema{{"LINE", Kind::Text}, {"CODE", Kind::Code}}};
  for (const Row& row : rows) r.insert(row);
  return r;
}

Relation codes_rel(std::initializer_list<const char*> codes) {
  Relation r{Schema{{"CODE", Kind::Code}}};
  for (const char* c : codes) r.insert(Row{Value::code(Quadcode::parse(c))});
  return r;
}

using Pairs = std::set<std::pair<std::string, std::string>>;

Pairs as_pairs(const Relation& r) {
  Pairs out;
  for (const Row& row : r.rows()) out.emplace(row[0].as_text(), row[1].as_code().digits());
  return out;
}

Relation random_rel(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(0, 12), name(0, 3), digit(0, 3), len(0, 2);
  Relation r{Schema{{"LINE", Kind::Text}, {"CODE", Kind::Code}}};
  for (int i = n(rng); i > 0; --i) {
    std::string d;
    for (int k = len(rng); k > 0; --k) d.push_back(static_cast<char>('0' + digit(rng)));
    r.insert(Row{Value::text(std::string(1, static_cast<char>('a' + name(rng)))), Value::code(Quadcode::parse(d))});
  }
  return r;
}

std::string state_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.state();
  }
  return "none";
}

}  // namespace

TEST_CASE("schemas reject empty and duplicate columns") {
  CHECK(state_of([] { Relation r{Schema{}}; }) == "42P16");
  CHECK(state_of([] { Relation r{Schema{{"CODE", Kind::Code}, {"code", Kind::Text}}}; }) == "42701");
  CHECK(state_of([] { Relation r{Schema{{"B", Kind::Bool}}}; }) == "42804");
}

TEST_CASE("insert has set semantics and checks kinds") {
  Relation r = lines_rel({});
  CHECK(r.insert(R("Insurgentes", "30")));
  CHECK_FALSE(r.insert(R("Insurgentes", "30")));
  CHECK(r.size() == 1);
  CHECK(state_of([&] { r.insert(Row{Value::text("x"), Value::number(3)}); }) == "42804");
  CHECK(state_of([&] { r.insert(Row{Value::text("x")}); }) == "42804");
  CHECK(r.insert(Row{Value::text("x"), Value::null()}));
  CHECK(r.insert(R("a", "0")));
  CHECK(r.insert(R("b", "1")));
  CHECK(r.insert(R("c", "2")));
  CHECK(r.size() == 5);
}

TEST_CASE("select filters then projects and collapses duplicates") {
  const Relation lines = lines_rel({R("A", "0"), R("A", "3"), R("B", "3")});
  const std::vector<std::string> code_col{"CODE"};
  const Relation a = select(lines, [](const Row& r) { return r[0].as_text() == "A"; }, code_col);
  CHECK(a == codes_rel({"0", "3"}));
  CHECK(select(lines, [](const Row&) { return true; }) == lines);
  CHECK(select(lines, [](const Row&) { return true; }, code_col).size() == 2);
  const std::vector<std::string> bad{"NOPE"};
  CHECK(state_of([&] { select(lines, [](const Row&) { return true; }, bad); }) == "42703");
}

TEST_CASE("cross product sizes and renaming") {
  Relation two{Schema{{"LINE", Kind::Text}}};
  two.insert(Row{Value::text("A")});
  two.insert(Row{Value::text("B")});
  const Relation three = codes_rel({"0", "1", "2"});
  CHECK(cross_product(two, three).size() == 6);
  CHECK(cross_product(two, codes_rel({})).empty());

  Relation a{Schema{{"LINE", Kind::Text}}};
  a.insert(Row{Value::text("A")});
  CHECK(as_pairs(cross_product(a, codes_rel({"0", "3"}))) == Pairs{{"A", "0"}, {"A", "3"}});

  const Relation lines = lines_rel({R("A", "0")});
  const Schema s = cross_product(lines, lines).schema();
  REQUIRE(s.size() == 4);
  CHECK(s[2].name == "LINE_2");
  CHECK(s[3].name == "CODE_2");
}

TEST_CASE("set operations on small relations") {
  CHECK(rel_intersect(codes_rel({"0", "3"}), codes_rel({"3", "2"})) == codes_rel({"3"}));
  const Relation r = codes_rel({"0", "12"});
  CHECK(rel_minus(r, r).empty());
  CHECK(rel_union(r, codes_rel({})) == r);
  // Codes match by exact digits only: "1" does not absorb "12".
  CHECK(rel_intersect(codes_rel({"1"}), codes_rel({"12"})).empty());
  CHECK(state_of([&] { rel_union(r, lines_rel({})); }) == "42804");
}

TEST_CASE("set laws hold on random relations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Relation a = random_rel(rng);
    const Relation b = random_rel(rng);
    const Pairs pa = as_pairs(a), pb = as_pairs(b);
    Pairs u, i, m;
    std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(u, u.end()));
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(i, i.end()));
    std::set_difference(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(m, m.end()));
    CHECK(as_pairs(rel_union(a, b)) == u);
    CHECK(as_pairs(rel_intersect(a, b)) == i);
    CHECK(as_pairs(rel_minus(a, b)) == m);
    CHECK(rel_union(a, a) == a);
    CHECK(rel_intersect(a, a) == a);
    CHECK(rel_minus(a, a).empty());
    CHECK(rel_intersect(a, b) == rel_intersect(b, a));
  }
}

TEST_CASE("standard database catalog") {
  Database db = Database::standard();
  CHECK(db.table_names() == std::vector<std::string>{"AREAS", "LINES", "POINTS"});
  CHECK(db.table("lines").schema() == Schema{{"LINE", Kind::Text}, {"CODE", Kind::Code}});
  CHECK(db.table("POINTS").empty());
  CHECK(state_of([&] { db.create_table("Lines", Schema{{"X", Kind::Text}}); }) == "42P07");
  CHECK(state_of([&] { db.create_table("T", Schema{{"CODE", Kind::Code}, {"CODE", Kind::Code}}); }) == "42701");
  CHECK(state_of([&] { db.create_table("bad name", Schema{{"X", Kind::Text}}); }) == "42P16");
  CHECK(state_of([&] { db.table("NOPE"); }) == "42P01");
  CHECK(db.insert_rows("LINES", {R("Insurgentes", "30"), R("Insurgentes", "30")}) == 1);
  CHECK(state_of([&] { db.insert_rows("LINES", {Row{Value::text("x"), Value::number(1)}}); }) == "42804");
}

TEST_CASE("a rejected batch leaves the table untouched") {
  Database db = Database::standard();
  const auto before = db.table_ptr("LINES");
  CHECK(state_of([&] { db.insert_rows("LINES", {R("a", "0"), Row{Value::number(1), Value::number(2)}}); }) == "42804");
  CHECK(db.table_ptr("LINES") == before);
  CHECK(db.table("LINES").empty());
}

TEST_CASE("copies are snapshots and share untouched tables") {
  Database a = Database::standard();
  a.insert_rows("LINES", {R("A", "0")});
  Database b = a;
  b.insert_rows("LINES", {R("B", "1")});
  CHECK(a.table("LINES").size() == 1);
  CHECK(b.table("LINES").size() == 2);
  CHECK(a.table_ptr("POINTS") == b.table_ptr("POINTS"));
  CHECK(a.table_ptr("LINES") != b.table_ptr("LINES"));
}

TEST_CASE("store_entity rasterises, replaces by name and warns on empty areas") {
  Database db = Database::standard();
  const Entity p{EntityKind::Point, "A", {{0, 0}}, {}};
  CHECK(db.store_entity(p, 1).stored == 1);
  CHECK(as_pairs(db.table("POINTS")) == Pairs{{"A", "0"}});

  const Entity s{EntityKind::Line, "S", {{0.1, 0.25}, {0.9, 0.25}, {0.9, 0.9}}, {}};
  const StoreResult r = db.store_entity(s, 1);
  CHECK(r.table == "LINES");
  CHECK(r.stored == 3);
  CHECK(as_pairs(db.table("LINES")) == Pairs{{"S", "0"}, {"S", "1"}, {"S", "3"}});

  const Entity s2{EntityKind::Line, "S", {{0.1, 0.9}, {0.3, 0.9}}, {}};
  db.store_entity(s2, 1);
  CHECK(as_pairs(db.table("LINES")) == Pairs{{"S", "2"}});

  const Entity flat{EntityKind::Area, "Flat", {{0, 0}, {0.5, 0.5}, {1, 1}}, {}};
  const StoreResult e = db.store_entity(flat, 3);
  CHECK(e.stored == 0);
  CHECK(e.warning.has_value());
  CHECK(db.table("AREAS").empty());

  const Entity outside{EntityKind::Point, "Z", {{2, 2}}, {}};
  CHECK(state_of([&] { db.store_entity(outside, 2); }) == "SP001");
  CHECK(state_of([&] { db.store_entity(p, 17); }) == "SP003");
  CHECK(db.default_level() == Database::kDefaultLevel);
  db.store_entity(Entity{EntityKind::Point, "D", {{0.999, 0.999}}, {}});
  CHECK(db.entity_codes("POINTS", "D") == std::vector<Quadcode>{Quadcode::parse("33333333")});
}

TEST_CASE("delete_entity removes all rows of one name") {
  Database db = Database::standard();
  db.insert_rows("LINES", {R("A", "0"), R("A", "1"), R("B", "1")});
  CHECK(db.delete_entity("LINES", "A") == 2);
  CHECK(db.delete_entity("LINES", "A") == 0);
  CHECK(as_pairs(db.table("LINES")) == Pairs{{"B", "1"}});
}

TEST_CASE("lines_through_point examples") {
  Database db = Database::standard();
  db.insert_rows("POINTS", {R("A", "30")});
  db.insert_rows("LINES", {R("L1", "30"), R("L1", "31"), R("L2", "02")});
  const LookupResult r = lines_through_point(db, "A");
  CHECK_FALSE(r.warning);
  REQUIRE(r.relation.size() == 1);
  CHECK(r.relation.rows().begin()->at(0).as_text() == "L1");

  const LookupResult unknown = lines_through_point(db, "Nope");
  CHECK(unknown.relation.empty());
  CHECK(unknown.warning.has_value());

  db.insert_rows("POINTS", {Row{Value::text("Empty"), Value::null()}});
  CHECK(lines_through_point(db, "Empty").relation.size() == 2);

  db.insert_rows("POINTS", {R("B", "33")});
  CHECK(lines_through_point(db, "B").relation.empty());
}

TEST_CASE("lines_through_point matches the superset oracle on random databases") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const fixture::SmallDb small = fixture::random_small_db(rng);
    const Database db = fixture::build(small);
    for (const auto& [point, codes] : small.points) {
      const LookupResult result = lines_through_point(db, point);
      std::set<std::string> got;
      for (const Row& row : result.relation.rows()) got.insert(row[0].as_text());
      CHECK(got == oracle::superset_filter(small.lines, codes));
    }
  }
}

TEST_CASE("snapshot store publishes only successful writes") {
  SnapshotStore store(Database::standard());
  const auto before = store.snapshot();
  CHECK_THROWS_AS(store.write([](Database& db) {
    db.insert_rows("LINES", {R("A", "0")});
    throw Error(sqlstate::kIoError, "boom");
    return 0;
  }),
                  Error);
  CHECK(store.snapshot() == before);

  store.write([](Database& db) { return db.insert_rows("LINES", {R("A", "0")}); });
  CHECK(store.snapshot()->table("LINES").size() == 1);
  CHECK(before->table("LINES").empty());

  int hook_calls = 0;
  store.set_commit_hook([&](const Database&, const Database&) {
    if (++hook_calls == 2) throw Error(sqlstate::kIoError, "disk full");
  });
  store.write([](Database& db) { return db.insert_rows("LINES", {R("B", "0")}); });
  CHECK_THROWS(store.write([](Database& db) { return db.insert_rows("LINES", {R("C", "0")}); }));
  CHECK(store.snapshot()->table("LINES").size() == 2);
}

TEST_CASE("readers keep working while a writer commits") {
  SnapshotStore store(Database::standard());
  std::atomic<bool> stop{false};
  std::atomic<long> reads{0};
  std::thread reader([&] {
    while (!stop) {
      const auto snap = store.snapshot();
      const std::size_t n = snap->table("LINES").size();
      // A snapshot never changes under its reader.
      if (snap->table("LINES").size() != n) std::abort();
      ++reads;
    }
  });
  for (int i = 0; i < 200; ++i) {
    store.write([&](Database& db) { return db.insert_rows("LINES", {R("L", "0"), Row{Value::text(std::to_string(i)), Value::code(Quadcode::parse("1"))}}); });
  }
  stop = true;
  reader.join();
  CHECK(store.snapshot()->table("LINES").size() == 201);
  CHECK(reads > 0);
}
