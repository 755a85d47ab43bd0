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

#include "spl/qt_functions.hpp"

#include <algorithm>

#include "spl/error.hpp"
#include "spl/text.hpp"

namespace spl {

namespace {

const std::vector<FunctionSig>& registry() {
  static const std::vector<FunctionSig> fns = {
      {"QT_CONTAINS", {Kind::Code, Kind::Code}, Kind::Bool},
      {"QT_COMMON", {Kind::Code, Kind::Code}, Kind::Code},
      {"QT_ADJACENT", {Kind::Code, Kind::Code}, Kind::Bool},
      {"QT_NEIGHBOR", {Kind::Code, Kind::Text}, Kind::Code},
      {"QT_PARENT", {Kind::Code}, Kind::Code},
      {"QT_LEVEL", {Kind::Code}, Kind::Number},
      {"QT_CELLAREA", {Kind::Code}, Kind::Number},
      {"QT_DIST", {Kind::Code, Kind::Code}, Kind::Number},
  };
  return fns;
}

}  // namespace

const FunctionSig* find_function(std::string_view name) {
  const auto& fns = registry();
  const auto it = std::find_if(fns.begin(), fns.end(), [&](const FunctionSig& f) { return iequals(f.name, name); });
  return it == fns.end() ? nullptr : &*it;
}

std::span<const FunctionSig> all_functions() { return registry(); }

Value call_function(const FunctionSig& fn, std::span<const Value> args) {
  if (args.size() != fn.params.size()) {
    throw Error(sqlstate::kWrongArity, std::string(fn.name) + " takes " + std::to_string(fn.params.size()) +
                                           " argument(s), got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].is_null()) return Value::null();
    if (fn.params[i] != Kind::Null && args[i].kind() != fn.params[i]) {
      throw Error(sqlstate::kDatatypeMismatch, std::string(fn.name) + " argument " + std::to_string(i + 1) +
                                                   " must be " + std::string(to_string(fn.params[i])) + ", got " +
                                                   std::string(to_string(args[i].kind())));
    }
  }
  const std::string_view n = fn.name;
  const Quadcode a = args[0].as_code();
  if (n == "QT_CONTAINS") return Value::boolean(contains(a, args[1].as_code()));
  if (n == "QT_COMMON") {
    const auto c = common(a, args[1].as_code());
    return c ? Value::code(*c) : Value::null();
  }
  if (n == "QT_ADJACENT") return Value::boolean(adjacent(a, args[1].as_code()));
  if (n == "QT_NEIGHBOR") {
    const auto dir = parse_direction(args[1].as_text());
    if (!dir) throw domain_error("unknown direction '" + args[1].as_text() + "' (expected N, S, E or W)");
    const auto c = neighbor(a, *dir);
    return c ? Value::code(*c) : Value::null();
  }
  if (n == "QT_PARENT") return Value::code(parent_of(a));
  if (n == "QT_LEVEL") return Value::number(a.level());
  if (n == "QT_CELLAREA") return Value::number(cell_area(a));
  if (n == "QT_DIST") return Value::number(dist(a, args[1].as_code()));
  throw Error(sqlstate::kUndefinedRoutine, "unknown function " + std::string(n));
}

}  // namespace spl
