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

// Statements for round-trip checks and seeds for the mutation corpus.

#pragma once

#include <string>
#include <vector>

namespace spl::corpus {

inline const std::vector<std::string>& statements() {
  static const std::vector<std::string> s = {
      "SELECT CODE FROM LINES",
      "select code from lines where line = 'Insurgentes'",
      "SELECT * FROM LINES",
      "SELECT LINE, CODE FROM LINES WHERE CODE = Q'0123'",
      "SELECT CODE FROM LINES WHERE CODE = Q''",
      "SELECT LINE FROM LINES WHERE LINE <> 'A' AND CODE = Q'3'",
      "SELECT LINE FROM LINES WHERE LINE != 'A' OR LINE = 'B'",
      "SELECT LINE FROM LINES WHERE NOT LINE = 'A'",
      "SELECT LINE FROM LINES WHERE NOT (LINE = 'A' OR LINE = 'B')",
      "SELECT LINE FROM LINES WHERE (LINE = 'A' OR LINE = 'B') AND CODE = Q'1'",
      "SELECT LINE FROM LINES WHERE LINE = 'it''s'",
      "SELECT CODE FROM LINES WHERE QT_CONTAINS(Q'3', CODE)",
      "SELECT CODE FROM LINES WHERE QT_LEVEL(CODE) >= 2 AND QT_LEVEL(CODE) < 5",
      "SELECT CODE FROM LINES WHERE QT_DIST(CODE, Q'0') <= 0.5",
      "SELECT CODE FROM LINES WHERE QT_CELLAREA(CODE) * 4 > 1 - 0.75",
      "SELECT CODE FROM LINES WHERE QT_LEVEL(CODE) + 1 = 3 * (2 - 1)",
      "SELECT CODE FROM LINES WHERE QT_LEVEL(CODE) - (1 - 1) = 2",
      "SELECT CODE FROM LINES WHERE QT_LEVEL(CODE) / 2 = -1.5",
      "SELECT CODE FROM LINES WHERE -(QT_LEVEL(CODE)) < -2",
      "SELECT CODE FROM LINES WHERE QT_LEVEL(CODE) = 1e2",
      "SELECT CODE FROM LINES WHERE QT_NEIGHBOR(CODE, 'N') = Q'01'",
      "SELECT CODE FROM LINES WHERE QT_PARENT(CODE) = Q'0' AND QT_ADJACENT(CODE, Q'1')",
      "SELECT CODE FROM LINES WHERE QT_COMMON(CODE, Q'2') = CODE",
      "SELECT CODE FROM LINES WHERE (LINE = 'A') = TRUE",
      "SELECT CODE FROM LINES WHERE LINE = NULL",
      "SELECT CODE FROM LINES WHERE FALSE",
      "SELECT CODE FROM LINES WHERE LINE = :name",
      "SELECT CODIGO FROM POINTS WHERE POINT = :p",
      "SELECT CODE FROM LINES INTERSECT SELECT CODE FROM AREAS",
      "SELECT CODE FROM LINES UNION SELECT CODE FROM AREAS INTERSECT SELECT CODE FROM POINTS",
      "(SELECT CODE FROM LINES UNION SELECT CODE FROM AREAS) INTERSECT SELECT CODE FROM POINTS",
      "SELECT LINE FROM LINES MINUS SELECT AREA FROM AREAS MINUS SELECT POINT FROM POINTS",
      "SELECT LINE FROM LINES EXCEPT SELECT AREA FROM AREAS",
      "LINES",
      "LINES MINUS AREAS",
      "(LINES)",
      "SELECT * FROM LINES, POINTS",
      "SELECT LINE, POINT FROM LINES, POINTS WHERE CODE = CODE_2",
      "SELECT * FROM (SELECT LINE FROM LINES), (SELECT CODE FROM POINTS)",
      "SELECT LINE FROM (SELECT * FROM LINES WHERE LINE = 'A')",
      "SELECT LINE FROM (SELECT * FROM LINES) MINUS LINES",
      "SELECT LINE FROM (LINES) WHERE LINE = 'x'",
      "SELECT LINE FROM ((SELECT * FROM LINES) MINUS LINES)",
      "SELECT LINE FROM (SELECT * FROM LINES) INTERSECT LINES UNION LINES",
      "CREATE TABLE ROADS (NAME TEXT, CODE CODE, LANES NUMBER)",
      "create table t (a char(8), b char)",
      "INSERT INTO LINES VALUES ('A', Q'0'), ('A', Q'3')",
      "INSERT INTO LINES (CODE, LINE) VALUES (Q'12', 'B')",
      "INSERT INTO ROADS VALUES ('x', NULL, -2)",
      "INSERT INTO ROADS (LANES) VALUES (-(-3))",
      "PROCEDURE P (SQLSTATE) ; SELECT * FROM LINES",
      "PROCEDURE Q2 (SQLSTATE, :a NUMBER, :b CODE, :c TEXT); SELECT CODE FROM LINES WHERE QT_LEVEL(CODE) = :a",
      "CALL INETER_A_B('Insurgentes', 'Reforma')",
      "CALL P()",
      "call all_lines_a('A')",
      "SELECT CODE FROM LINES -- trailing comment",
      "SELECT\n  CODE\nFROM\n  LINES\nWHERE\n  LINE = 'A'",
  };
  return s;
}

}  // namespace spl::corpus
