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

#include "spl/value.hpp"

#include <charconv>
#include <cctype>
#include <cmath>

#include "spl/error.hpp"

namespace spl {

std::string_view to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::Null: return "null";
    case Kind::Bool: return "bool";
    case Kind::Number: return "number";
    case Kind::Text: return "text";
    case Kind::Code: return "code";
  }
  return "null";
}

Kind parse_column_kind(std::string_view text) {
  std::string low;
  for (char c : text) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (low == "text") return Kind::Text;
  if (low == "number") return Kind::Number;
  if (low == "code") return Kind::Code;
  throw Error(sqlstate::kDatatypeMismatch, "unknown column kind '" + std::string(text) + "'");
}

std::string format_number(double d) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  double d = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), d);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(sqlstate::kDatatypeMismatch, "malformed number '" + std::string(text) + "'");
  }
  return d;
}

std::string Value::to_string() const {
  switch (kind()) {
    case Kind::Null: return "";
    case Kind::Bool: return as_bool() ? "true" : "false";
    case Kind::Number: return format_number(as_number());
    case Kind::Text: return as_text();
    case Kind::Code: return as_code().text();
  }
  return "";
}

std::weak_ordering operator<=>(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() <=> b.v_.index();
  switch (a.kind()) {
    case Kind::Null: return std::weak_ordering::equivalent;
    case Kind::Bool: return a.as_bool() <=> b.as_bool();
    case Kind::Number: {
      const double x = a.as_number(), y = b.as_number();
      const bool xn = std::isnan(x), yn = std::isnan(y);
      if (xn || yn) return xn == yn ? std::weak_ordering::equivalent
                                    : (xn ? std::weak_ordering::greater : std::weak_ordering::less);
      if (x < y) return std::weak_ordering::less;
      if (x > y) return std::weak_ordering::greater;
      return std::weak_ordering::equivalent;
    }
    case Kind::Text: {
      const int c = a.as_text().compare(b.as_text());
      return c < 0 ? std::weak_ordering::less : (c > 0 ? std::weak_ordering::greater : std::weak_ordering::equivalent);
    }
    case Kind::Code: return a.as_code() <=> b.as_code();
  }
  return std::weak_ordering::equivalent;
}

}  // namespace spl
