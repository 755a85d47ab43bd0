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

#include <compare>
#include <string>
#include <string_view>
#include <variant>

#include "spl/quadcode.hpp"

namespace spl {

//! Kinds a value can take. Columns are Text, Number or Code; Bool only
//! appears as the result of a predicate or a QT_* test function.
enum class Kind { Null, Bool, Number, Text, Code };

std::string_view to_string(Kind kind) noexcept;
//! Parses "text", "number", "code" (any case). Throws 42804 otherwise.
Kind parse_column_kind(std::string_view text);

class Value {
 public:
  Value() = default;

  static Value null() { return Value(); }
  static Value boolean(bool b) { return Value(Storage(std::in_place_index<1>, b)); }
  static Value number(double d) { return Value(Storage(std::in_place_index<2>, d)); }
  static Value text(std::string s) { return Value(Storage(std::in_place_index<3>, std::move(s))); }
  static Value code(Quadcode c) { return Value(Storage(std::in_place_index<4>, c)); }

  Kind kind() const noexcept { return static_cast<Kind>(v_.index()); }
  bool is_null() const noexcept { return v_.index() == 0; }

  bool as_bool() const { return std::get<1>(v_); }
  double as_number() const { return std::get<2>(v_); }
  const std::string& as_text() const { return std::get<3>(v_); }
  Quadcode as_code() const { return std::get<4>(v_); }

  //! Plain rendering: digits (or "@") for codes, shortest round-trip
  //! decimal for numbers, "" for Null.
  std::string to_string() const;

  //! Structural identity, used for row deduplication. Null equals Null here;
  //! predicate semantics live in the evaluator.
  friend bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }
  //! Kind first, then content. Numbers use a total order (NaN last).
  friend std::weak_ordering operator<=>(const Value& a, const Value& b);

 private:
  using Storage = std::variant<std::monostate, bool, double, std::string, Quadcode>;
  explicit Value(Storage v) : v_(std::move(v)) {}

  Storage v_;
};

//! Shortest decimal text that parses back to the same double.
std::string format_number(double d);
//! Inverse of format_number; throws 42804 on malformed text.
double parse_number(std::string_view text);

}  // namespace spl
