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

#include <fstream>
#include <sstream>
#include <thread>

#include "spl/sql/executor.hpp"
#include "spl/sql/parser.hpp"
#include "support/crossing.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/printers.hpp"

using namespace spl;
using namespace spl::sql;

namespace {

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(SPL_SOURCE_DIR) + "/" + rel);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome exec(Database& db, std::string_view text, const Bindings& b = {}) {
  return execute(parse_statement(text), db, b);
}

std::string fails_with(Database& db, std::string_view text, const Bindings& b = {}) {
  try {
    exec(db, text, b);
  } catch (const Error& e) {
    return e.state();
  }
  return "accepted";
}

// Single value of a one-row, one-column query.
Value one(Database& db, std::string_view text, const Bindings& b = {}) {
  const Outcome o = exec(db, text, b);
  REQUIRE(o.relation);
  REQUIRE(o.relation->size() == 1);
  return o.relation->rows().begin()->at(0);
}

std::set<std::string> column_text(const Relation& rel, std::size_t col = 0) {
  std::set<std::string> out;
  for (const Row& r : rel.rows()) out.insert(r.at(col).to_string());
  return out;
}

// Evaluates a constant expression by inserting it into a one-column table.
Value value_of(std::string_view expr, std::string_view kind) {
  Database db;
  exec(db, "CREATE TABLE V (X " + std::string(kind) + ")");
  exec(db, "INSERT INTO V VALUES (" + std::string(expr) + ")");
  REQUIRE(db.table("V").size() == 1);
  return db.table("V").rows().begin()->at(0);
}

Database with_procedures() {
  Database db = Database::standard();
  exec(db, slurp("samples/ineter_a_b.sql"));
  exec(db, slurp("samples/all_lines_a.sql"));
  return db;
}

}  // namespace

TEST_CASE("QT functions through SQL") {
  Database db = Database::standard();
  exec(db, "CREATE TABLE C (CODE CODE)");
  exec(db, "INSERT INTO C VALUES (Q'32')");
  CHECK(exec(db, "SELECT CODE FROM C WHERE QT_CONTAINS(Q'3', CODE)").relation->size() == 1);
  CHECK(exec(db, "SELECT CODE FROM C WHERE QT_CONTAINS(CODE, Q'3')").relation->empty());
  CHECK(exec(db, "SELECT CODE FROM C WHERE QT_DIST(Q'0', Q'3') = 0.7071067811865476").relation->size() == 1);
  CHECK(exec(db, "SELECT CODE FROM C WHERE QT_NEIGHBOR(CODE, 'n') = Q'30'").relation->size() == 1);
  CHECK(exec(db, "SELECT CODE FROM C WHERE QT_PARENT(CODE) = Q'3' AND QT_LEVEL(CODE) = 2").relation->size() == 1);
  CHECK(exec(db, "SELECT CODE FROM C WHERE QT_CELLAREA(CODE) = 0.0625").relation->size() == 1);

  CHECK(value_of("QT_DIST(Q'0', Q'3')", "NUMBER").as_number() == 0.7071067811865476);
  CHECK(value_of("QT_NEIGHBOR(Q'1', 'E')", "CODE").is_null());
  CHECK(value_of("QT_NEIGHBOR(Q'32', 'S')", "CODE").is_null());
  CHECK(value_of("QT_NEIGHBOR(Q'32', 'w')", "CODE") == Value::code(Quadcode::parse("23")));
  CHECK(value_of("QT_COMMON(Q'3', Q'32')", "CODE") == Value::code(Quadcode::parse("32")));
  CHECK(value_of("QT_COMMON(Q'', Q'0')", "CODE") == Value::code(Quadcode::parse("0")));
  CHECK(value_of("QT_COMMON(Q'32', Q'31')", "CODE").is_null());
  CHECK(value_of("QT_LEVEL(Q'')", "NUMBER").as_number() == 0);
  CHECK(value_of("QT_CELLAREA(Q'')", "NUMBER").as_number() == 1);
  CHECK(value_of("QT_PARENT(NULL)", "CODE").is_null());
  CHECK(fails_with(db, "SELECT CODE FROM C WHERE QT_PARENT(Q'') = Q''") == "SP003");
  CHECK(fails_with(db, "SELECT CODE FROM C WHERE QT_NEIGHBOR(CODE, 'up') = Q''") == "SP003");
  CHECK(fails_with(db, "SELECT CODE FROM C WHERE QT_DIST(Q'0') = 1") == "42P13");
  CHECK(fails_with(db, "SELECT CODE FROM C WHERE QT_DIST(Q'0', 'x') = 1") == "42804");
  CHECK(fails_with(db, "SELECT CODE FROM C WHERE QT_NOPE(CODE)") == "42883");
  CHECK(fails_with(db, "SELECT CODE FROM C WHERE QT_LEVEL(CODE)") == "42804");
}

TEST_CASE("QT functions agree with grid arithmetic at levels up to 4") {
  Database db = Database::standard();
  exec(db, "CREATE TABLE C (CODE CODE)");
  exec(db, "CREATE TABLE D (CODE CODE)");
  std::vector<Quadcode> all{Quadcode()};
  for (std::size_t i = 0; i < all.size() && all[i].level() < 4; ++i) {
    for (Quadcode c : children_of(all[i])) all.push_back(c);
  }
  REQUIRE(all.size() == 341);
  std::vector<Row> rows;
  for (Quadcode c : all) rows.push_back(Row{Value::code(c)});
  db.insert_rows("C", rows);
  db.insert_rows("D", rows);
  // The root has no neighbour or parent, so those run without it.
  exec(db, "CREATE TABLE C1 (CODE CODE)");
  exec(db, "CREATE TABLE D1 (CODE CODE)");
  rows.erase(rows.begin());
  db.insert_rows("C1", rows);
  db.insert_rows("D1", rows);

  auto pairs = [&](const std::string& where, const char* from = "C, D") {
    return exec(db, "SELECT CODE, CODE_2 FROM " + std::string(from) + " WHERE " + where).relation->rows();
  };
  const auto contains = pairs("QT_CONTAINS(CODE, CODE_2)");
  const auto common = pairs("QT_COMMON(CODE, CODE_2) = CODE_2");
  const auto adjacent = pairs("QT_ADJACENT(CODE, CODE_2)");
  const auto near = pairs("QT_DIST(CODE, CODE_2) < 0.3");
  const auto north = pairs("QT_NEIGHBOR(CODE, 'N') = CODE_2", "C1, D1");
  const auto west = pairs("QT_NEIGHBOR(CODE, 'west') = CODE_2", "C1, D1");
  const auto parent = pairs("QT_PARENT(CODE_2) = CODE", "C, D1");

  // Cells as integer boxes at level 4.
  struct Box {
    std::int64_t x0, y0, x1, y1;
  };
  auto box = [](Quadcode q) {
    std::uint32_t x, y;
    oracle::digits_to_xy(q.digits(), x, y);
    const std::int64_t s = std::int64_t{1} << (4 - q.level());
    return Box{x * s, y * s, (x + 1) * s, (y + 1) * s};
  };
  std::size_t n_contains = 0, n_adjacent = 0, n_near = 0, n_north = 0, n_west = 0, n_parent = 0;
  for (Quadcode a : all) {
    const Box ba = box(a);
    const std::string da = a.digits();
    for (Quadcode b : all) {
      const Row r{Value::code(a), Value::code(b)};
      const Box bb = box(b);
      const std::string db_ = b.digits();
      const bool inside = db_.compare(0, da.size(), da) == 0;
      const bool xtouch = ba.x1 == bb.x0 || bb.x1 == ba.x0, ytouch = ba.y1 == bb.y0 || bb.y1 == ba.y0;
      const bool xover = ba.x0 < bb.x1 && bb.x0 < ba.x1, yover = ba.y0 < bb.y1 && bb.y0 < ba.y1;
      const bool adj = (xtouch && yover) || (ytouch && xover);
      const double dx = (ba.x0 + ba.x1 - bb.x0 - bb.x1) / 32.0, dy = (ba.y0 + ba.y1 - bb.y0 - bb.y1) / 32.0;
      const bool close = std::sqrt(dx * dx + dy * dy) < 0.3;
      const bool is_north = a.level() > 0 && oracle::shift_oracle(a, Direction::North) == b;
      const bool is_west = a.level() > 0 && oracle::shift_oracle(a, Direction::West) == b;
      const bool is_parent = b.level() > 0 && db_.substr(0, db_.size() - 1) == da;
      CHECK(contains.contains(r) == inside);
      CHECK(common.contains(r) == inside);
      CHECK(adjacent.contains(r) == adj);
      CHECK(near.contains(r) == close);
      CHECK(north.contains(r) == is_north);
      CHECK(west.contains(r) == is_west);
      CHECK(parent.contains(r) == is_parent);
      n_contains += inside;
      n_adjacent += adj;
      n_near += close;
      n_north += is_north;
      n_west += is_west;
      n_parent += is_parent;
    }
  }
  CHECK(contains.size() == n_contains);
  CHECK(common.size() == n_contains);
  CHECK(adjacent.size() == n_adjacent);
  CHECK(near.size() == n_near);
  CHECK(north.size() == n_north);
  CHECK(west.size() == n_west);
  CHECK(parent.size() == n_parent);
  for (int level = 0; level <= 4; ++level) {
    const std::string k = std::to_string(level);
    CHECK(exec(db, "SELECT CODE FROM C WHERE QT_LEVEL(CODE) = " + k).relation->size() == (std::size_t{1} << (2 * level)));
    CHECK(exec(db, "SELECT CODE FROM C WHERE QT_CELLAREA(CODE) * " + std::to_string(1 << (2 * level)) + " = 1")
              .relation->size() == (std::size_t{1} << (2 * level)));
  }
}

TEST_CASE("checker rejects ill-typed queries with positions") {
  Database db = Database::standard();
  CHECK(fails_with(db, "SELECT LINE FROM LINES INTERSECT SELECT CODE FROM LINES") == "42804");
  CHECK(fails_with(db, "SELECT NOPE FROM LINES") == "42703");
  CHECK(fails_with(db, "SELECT CODE FROM ROADS") == "42P01");
  CHECK(exec(db, "SELECT CODE_2 FROM LINES, POINTS").relation->schema()[0].name == "CODE_2");
  CHECK(fails_with(db, "SELECT LINE FROM LINES WHERE LINE = Q'1'") == "42804");
  CHECK(fails_with(db, "SELECT LINE FROM LINES WHERE CODE + 1 = 2") == "42804");
  CHECK(fails_with(db, "SELECT LINE FROM LINES WHERE LINE") == "42804");
  CHECK(fails_with(db, "SELECT LINE FROM LINES WHERE LINE = :p") == "42P02");
  CHECK(fails_with(db, "CREATE TABLE LINES (A TEXT)") == "42P07");
  CHECK(fails_with(db, "CREATE TABLE T (A TEXT, a NUMBER)") == "42701");
  CHECK(fails_with(db, "INSERT INTO LINES VALUES ('a')") == "42P13");
  CHECK(fails_with(db, "INSERT INTO LINES VALUES (Q'1', 'a')") == "42804");
  CHECK(fails_with(db, "INSERT INTO LINES (NOPE) VALUES ('a')") == "42703");
  try {
    exec(db, "SELECT LINE\nFROM LINES WHERE NOPE = 1");
    FAIL("accepted");
  } catch (const Error& e) {
    REQUIRE(e.position());
    CHECK(*e.position() == SourcePos{2, 18});
  }
}

TEST_CASE("procedures: definition, calls and argument checks") {
  Database db = with_procedures();
  CHECK(db.has_procedure("ineter_a_b"));
  CHECK(fails_with(db, slurp("samples/ineter_a_b.sql")) == "42723");
  CHECK(fails_with(db, "CALL NOPE('a')") == "42883");
  CHECK(fails_with(db, "CALL INETER_A_B('a')") == "42P13");
  CHECK(fails_with(db, "CALL INETER_A_B(1, 'b')") == "42804");
  CHECK(fails_with(db, "PROCEDURE BAD (SQLSTATE, :a NUMBER); SELECT LINE FROM LINES WHERE LINE = :a") == "42804");
  CHECK(fails_with(db, "PROCEDURE BAD (SQLSTATE, :a TEXT); SELECT LINE FROM LINES WHERE LINE = :b") == "42P02");
  CHECK(fails_with(db, "PROCEDURE BAD (SQLSTATE, :a TEXT, :A TEXT); LINES") == "42701");
  CHECK(fails_with(db, "PROCEDURE BAD (SQLSTATE, :a TEXT); SELECT X FROM LINES") == "42703");
  CHECK_FALSE(db.has_procedure("BAD"));
  // CHAR parameters take text or codes; CODE columns decide at call time.
  CHECK(exec(db, "CALL ALL_LINES_A('nowhere')").sqlstate == "02000");
  CHECK(fails_with(db, "CALL ALL_LINES_A(Q'1')") == "42804");
  const Outcome o = exec(db, "CALL INETER_A_B(:a, :b)", Bindings{{"A", Value::text("x")}, {"b", Value::text("y")}});
  CHECK(o.type == Outcome::Type::Rows);
  CHECK(o.sqlstate == "02000");
  CHECK(o.relation->schema()[0].name == "CODE");
}

TEST_CASE("INETER_A_B returns the intersection cells of crossing lines") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int level = 1 + trial % 8;
    const fixture::CrossingPair c = fixture::random_crossing(rng, level);
    Database db = with_procedures();
    db.store_entity(Entity{EntityKind::Line, "A", fixture::to_world(c.a), {}}, level);
    db.store_entity(Entity{EntityKind::Line, "B", fixture::to_world(c.b), {}}, level);
    const Outcome o = exec(db, "CALL INETER_A_B('A', 'B')");
    REQUIRE(o.relation);
    CHECK(o.sqlstate == "00000");
    std::vector<Quadcode> got;
    for (const Row& r : o.relation->rows()) got.push_back(r.at(0).as_code());
    for (const std::string& cell : c.crossing_cells) CHECK(std::ranges::count(got, Quadcode::parse(cell)) == 1);
    const CodeSet a = CodeSet::normalize(db.entity_codes("LINES", "A"));
    const CodeSet b = CodeSet::normalize(db.entity_codes("LINES", "B"));
    CHECK(CodeSet::normalize(got) == set_intersect(a, b));
  }
}

TEST_CASE("INETER_A_B on disjoint lines is empty with 02000") {
  Database db = with_procedures();
  db.store_entity(Entity{EntityKind::Line, "A", {{0.1, 0.1}, {0.4, 0.1}}, {}}, 6);
  db.store_entity(Entity{EntityKind::Line, "B", {{0.1, 0.9}, {0.9, 0.9}}, {}}, 6);
  const Outcome o = exec(db, "CALL INETER_A_B('A', 'B')");
  CHECK(o.relation->empty());
  CHECK(o.sqlstate == "02000");
  CHECK(exec(db, "CALL INETER_A_B('A', 'missing')").sqlstate == "02000");
}

TEST_CASE("ALL_LINES_A equals the superset filter and the built-in") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const fixture::SmallDb small = fixture::random_small_db(rng);
    Database db = fixture::build(small);
    exec(db, slurp("samples/all_lines_a.sql"));
    for (const auto& [point, codes] : small.points) {
      CAPTURE(trial, point);
      const Outcome o = exec(db, "CALL ALL_LINES_A('" + point + "')");
      const std::set<std::string> got = column_text(*o.relation);
      CHECK(got == oracle::superset_filter(small.lines, codes));
      CHECK(got == column_text(lines_through_point(db, point).relation));
      CHECK(o.sqlstate == (got.empty() ? "02000" : "00000"));
    }
  }
}

TEST_CASE("null semantics") {
  Database db = Database::standard();
  exec(db, "CREATE TABLE T (A NUMBER, B TEXT)");
  exec(db, "INSERT INTO T VALUES (1, 'x'), (NULL, 'y'), (2, NULL)");
  // Any comparison with Null is false, so NOT of it holds.
  CHECK(column_text(*exec(db, "SELECT B FROM T WHERE A = NULL").relation).empty());
  CHECK(column_text(*exec(db, "SELECT B FROM T WHERE A <> NULL").relation).empty());
  CHECK(column_text(*exec(db, "SELECT B FROM T WHERE NOT A = 1").relation) == std::set<std::string>{"", "y"});
  CHECK(column_text(*exec(db, "SELECT B FROM T WHERE A = 1 OR A > 5").relation) == std::set<std::string>{"x"});
  CHECK(column_text(*exec(db, "SELECT B FROM T WHERE A = 5 OR TRUE").relation).size() == 3);
  CHECK(column_text(*exec(db, "SELECT A FROM T WHERE B = NULL OR B <> 'x'").relation) == std::set<std::string>{""});
  CHECK(column_text(*exec(db, "SELECT A FROM T WHERE A + 1 = 2").relation) == std::set<std::string>{"1"});
  // Null literals in logic follow three-valued rules; WHERE keeps only true.
  CHECK(exec(db, "SELECT A FROM T WHERE NULL OR TRUE").relation->size() == 3);
  CHECK(exec(db, "SELECT A FROM T WHERE NULL AND TRUE").relation->empty());
  CHECK(exec(db, "SELECT A FROM T WHERE NOT (NULL AND FALSE)").relation->size() == 3);
  CHECK(exec(db, "SELECT A FROM T WHERE NOT NULL").relation->empty());
  CHECK(value_of("1 + NULL", "NUMBER").is_null());
  CHECK(value_of("2 * 3 - 0.5", "NUMBER").as_number() == 5.5);
  CHECK(value_of("-(4) / 8", "NUMBER").as_number() == -0.5);
  CHECK(fails_with(db, "INSERT INTO T VALUES (1 / 0, 'z')") == "22012");
  CHECK(fails_with(db, "SELECT A FROM T WHERE A / 0 = 1") == "22012");
}

TEST_CASE("insert, create and set operations") {
  Database db = Database::standard();
  CHECK(exec(db, "CREATE TABLE ROADS (NAME CHAR(8), CODE CODE)").message == "CREATE TABLE ROADS");
  Outcome o = exec(db, "INSERT INTO ROADS VALUES ('a', Q'1'), ('a', Q'1'), ('b', Q'')");
  CHECK(o.type == Outcome::Type::Count);
  CHECK(o.count == 2);
  CHECK(exec(db, "INSERT INTO ROADS VALUES ('a', Q'1')").count == 0);
  CHECK(exec(db, "INSERT INTO ROADS (CODE) VALUES (Q'2')").count == 1);
  CHECK(exec(db, "SELECT NAME FROM ROADS WHERE CODE = Q'2'").relation->rows().begin()->at(0).is_null());
  // CHAR lengths are not enforced.
  CHECK(exec(db, "INSERT INTO ROADS VALUES ('toolongname', Q'3')").count == 1);
  CHECK(fails_with(db, "INSERT INTO ROADS VALUES ('c', Q'1'), ('d', 5)") == "42804");
  CHECK(db.table("ROADS").size() == 4);
  CHECK(column_text(*exec(db, "SELECT CODE FROM ROADS UNION SELECT CODE FROM ROADS").relation) ==
        std::set<std::string>{"@", "1", "2", "3"});
  CHECK(column_text(*exec(db, "ROADS MINUS SELECT * FROM ROADS WHERE NAME = 'a'").relation, 1) ==
        std::set<std::string>{"@", "2", "3"});
  CHECK(exec(db, "SELECT * FROM ROADS, ROADS").relation->schema()[2].name == "NAME_2");
  CHECK(exec(db, "SELECT * FROM ROADS, ROADS").relation->size() == 16);
}

TEST_CASE("run publishes writes only when they succeed") {
  SnapshotStore store(Database::standard());
  const auto before = store.snapshot();
  run(store, parse_statement("INSERT INTO LINES VALUES ('a', Q'1')"));
  CHECK(before->table("LINES").empty());
  CHECK(store.snapshot()->table("LINES").size() == 1);
  CHECK_THROWS_AS(run(store, parse_statement("INSERT INTO LINES VALUES ('b', Q'2'), ('c', 3)")), Error);
  CHECK(store.snapshot()->table("LINES").size() == 1);
  std::vector<std::string> seen;
  run_script(store, "CREATE TABLE T (A NUMBER); INSERT INTO T VALUES (1); SELECT A FROM T;",
             [&](const Statement&, const Outcome& o) { seen.push_back(o.message); });
  CHECK(seen.size() == 3);
  CHECK_THROWS_AS(run_script(store, "INSERT INTO T VALUES (2); SELECT NOPE FROM T; INSERT INTO T VALUES (3)",
                             [](const Statement&, const Outcome&) {}),
                  Error);
  CHECK(store.snapshot()->table("T").size() == 2);
  CHECK(is_read_only(parse_statement("CALL P()")));
  CHECK_FALSE(is_read_only(parse_statement("CREATE TABLE X (A TEXT)")));
  CHECK(execute_read(parse_statement("SELECT A FROM T"), *store.snapshot()).relation->size() == 2);
  CHECK_THROWS_AS(execute_read(parse_statement("INSERT INTO T VALUES (9)"), *store.snapshot()), Error);
}
