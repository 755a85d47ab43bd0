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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spl {

//! Five-character SQLSTATE. '00000' success, '02000' no data, '42xxx' syntax
//! and semantic classes, 'SP0xx' spatial errors.
namespace sqlstate {
inline constexpr std::string_view kSuccess = "00000";
inline constexpr std::string_view kNoData = "02000";
inline constexpr std::string_view kWarning = "01000";
inline constexpr std::string_view kDivisionByZero = "22012";
inline constexpr std::string_view kSyntaxError = "42601";
inline constexpr std::string_view kUndefinedParameter = "42P02";
inline constexpr std::string_view kUndefinedTable = "42P01";
inline constexpr std::string_view kDuplicateTable = "42P07";
inline constexpr std::string_view kUndefinedColumn = "42703";
inline constexpr std::string_view kDuplicateColumn = "42701";
inline constexpr std::string_view kDatatypeMismatch = "42804";
inline constexpr std::string_view kUndefinedRoutine = "42883";
inline constexpr std::string_view kDuplicateRoutine = "42723";
inline constexpr std::string_view kWrongArity = "42P13";
inline constexpr std::string_view kInvalidDefinition = "42P16";
inline constexpr std::string_view kOutOfWindow = "SP001";
inline constexpr std::string_view kDepthOverflow = "SP002";
inline constexpr std::string_view kQuadcodeDomain = "SP003";
inline constexpr std::string_view kInvalidGeometry = "SP004";
inline constexpr std::string_view kIoError = "58030";
}  // namespace sqlstate

struct SourcePos {
  int line = 1;
  int column = 1;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

//! Every failure raised by the engine carries a SQLSTATE, and parser or
//! checker failures also carry the offending source position.
class Error : public std::runtime_error {
 public:
  Error(std::string_view state, const std::string& message,
        std::optional<SourcePos> pos = std::nullopt)
      : std::runtime_error(message), state_(state), pos_(pos) {}

  const std::string& state() const noexcept { return state_; }
  const std::optional<SourcePos>& position() const noexcept { return pos_; }

 private:
  std::string state_;
  std::optional<SourcePos> pos_;
};

inline Error domain_error(const std::string& message) {
  return Error(sqlstate::kQuadcodeDomain, message);
}

}  // namespace spl
