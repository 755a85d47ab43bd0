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

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace spl {

//! Address of one linear-quadtree cell: a path of base-4 digits, most
//! significant first. Digit = 2 * y_bit + x_bit with the origin in the
//! top-left corner, so 0 = NW, 1 = NE, 2 = SW, 3 = SE. The empty path is the
//! root cell covering the whole unit square.
//!
//! Digits are packed left-aligned into 32 bits, which makes the canonical
//! order (lexicographic, proper prefix first) a plain comparison on
//! (path, level).
class Quadcode {
 public:
  static constexpr int kMaxLevel = 16;

  constexpr Quadcode() = default;

  //! Parses a digit string; "" is the root. Throws SP003 on bad input.
  static Quadcode parse(std::string_view digits);
  //! Like parse, but also accepts the text-format root token "@".
  static Quadcode parse_text(std::string_view text);
  //! Builds a code from a right-aligned interleaved index of 2*level bits.
  static Quadcode from_morton(std::uint32_t morton, int level);

  constexpr int level() const noexcept { return level_; }
  constexpr bool is_root() const noexcept { return level_ == 0; }
  //! k-th digit, 0-based from the most significant.
  constexpr int digit(int k) const noexcept {
    return static_cast<int>((path_ >> (30 - 2 * k)) & 3u);
  }
  //! Right-aligned interleaved index (2*level bits).
  constexpr std::uint32_t morton() const noexcept {
    return level_ == 0 ? 0u : path_ >> (32 - 2 * level_);
  }
  constexpr std::uint32_t path() const noexcept { return path_; }
  //! Monotone with the canonical order; unique per code.
  constexpr std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(path_) << 5) | level_;
  }
  static constexpr Quadcode from_key(std::uint64_t key) noexcept {
    return Quadcode(static_cast<std::uint32_t>(key >> 5),
                    static_cast<std::uint8_t>(key & 31u));
  }

  //! "" for the root.
  std::string digits() const;
  //! Text-format spelling: digits, or "@" for the root.
  std::string text() const;

  //! Appends one digit. Throws SP003 at kMaxLevel.
  Quadcode child(int digit) const;

  friend constexpr bool operator==(Quadcode, Quadcode) = default;
  friend constexpr std::strong_ordering operator<=>(Quadcode a, Quadcode b) noexcept {
    return a.key() <=> b.key();
  }

 private:
  constexpr Quadcode(std::uint32_t path, std::uint8_t level) : path_(path), level_(level) {}

  std::uint32_t path_ = 0;
  std::uint8_t level_ = 0;
};

enum class Direction { North, South, East, West };

//! Parses "N", "S", "E", "W" (or the full names), case-insensitive.
std::optional<Direction> parse_direction(std::string_view text);

struct GridCell {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  int level = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

//! Half-open rectangle [x0, x1) x [y0, y1) in the unit square.
struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

Quadcode encode_cell(std::uint32_t x, std::uint32_t y, int level);
GridCell decode_cell(Quadcode code) noexcept;
Rect cell_rect(Quadcode code) noexcept;

Quadcode parent_of(Quadcode code);
std::array<Quadcode, 4> children_of(Quadcode code);

//! True iff a's digits are a prefix of b's (a covers b).
constexpr bool contains(Quadcode a, Quadcode b) noexcept {
  if (a.level() > b.level()) return false;
  if (a.level() == 0) return true;
  const std::uint32_t mask = ~std::uint32_t{0} << (32 - 2 * a.level());
  return (b.path() & mask) == a.path();
}

//! Cell-level intersection: the longer code when one is a prefix of the
//! other, nothing when the cells are disjoint.
constexpr std::optional<Quadcode> common(Quadcode a, Quadcode b) noexcept {
  if (contains(a, b)) return b;
  if (contains(b, a)) return a;
  return std::nullopt;
}

//! Same-level neighbour one step in `dir`, or nothing when the step leaves
//! the grid. Throws SP003 for the root.
std::optional<Quadcode> neighbor(Quadcode code, Direction dir);

//! Euclidean distance between cell centres, in unit-square units.
double dist(Quadcode a, Quadcode b) noexcept;

//! Edge adjacency: closed cells share a boundary segment of positive length.
bool adjacent(Quadcode a, Quadcode b) noexcept;

//! Area of one cell as a fraction of the unit square.
double cell_area(Quadcode code) noexcept;

}  // namespace spl

template <>
struct std::hash<spl::Quadcode> {
  std::size_t operator()(spl::Quadcode code) const noexcept {
    return std::hash<std::uint64_t>{}(code.key());
  }
};
