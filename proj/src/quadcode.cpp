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

#include "spl/quadcode.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "spl/error.hpp"

namespace spl {

namespace {

// Spreads the low 16 bits of v so that bit i lands on bit 2i.
constexpr std::uint32_t spread_bits(std::uint32_t v) noexcept {
  v &= 0x0000ffffu;
  v = (v | (v << 8)) & 0x00ff00ffu;
  v = (v | (v << 4)) & 0x0f0f0f0fu;
  v = (v | (v << 2)) & 0x33333333u;
  v = (v | (v << 1)) & 0x55555555u;
  return v;
}

constexpr std::uint32_t compact_bits(std::uint32_t v) noexcept {
  v &= 0x55555555u;
  v = (v | (v >> 1)) & 0x33333333u;
  v = (v | (v >> 2)) & 0x0f0f0f0fu;
  v = (v | (v >> 4)) & 0x00ff00ffu;
  v = (v | (v >> 8)) & 0x0000ffffu;
  return v;
}

constexpr std::uint64_t level_mask(int level) noexcept {
  return (std::uint64_t{1} << (2 * level)) - 1;
}

}  // namespace

Quadcode Quadcode::parse(std::string_view digits) {
  if (digits.size() > static_cast<std::size_t>(kMaxLevel)) {
    throw domain_error("quadcode '" + std::string(digits) + "' exceeds maximum level " +
                       std::to_string(kMaxLevel));
  }
  std::uint32_t path = 0;
  int shift = 30;
  for (char c : digits) {
    if (c < '0' || c > '3') {
      throw domain_error("invalid quadcode digit '" + std::string(1, c) + "' in '" +
                         std::string(digits) + "'");
    }
    path |= static_cast<std::uint32_t>(c - '0') << shift;
    shift -= 2;
  }
  return Quadcode(path, static_cast<std::uint8_t>(digits.size()));
}

Quadcode Quadcode::parse_text(std::string_view text) {
  if (text == "@") return Quadcode{};
  return parse(text);
}

Quadcode Quadcode::from_morton(std::uint32_t morton, int level) {
  if (level < 0 || level > kMaxLevel) {
    throw domain_error("level " + std::to_string(level) + " outside [0, " +
                       std::to_string(kMaxLevel) + "]");
  }
  if (level == 0) return Quadcode{};
  if (static_cast<std::uint64_t>(morton) > level_mask(level)) {
    throw domain_error("interleaved index out of range for level " + std::to_string(level));
  }
  return Quadcode(morton << (32 - 2 * level), static_cast<std::uint8_t>(level));
}

std::string Quadcode::digits() const {
  std::string out(static_cast<std::size_t>(level_), '0');
  for (int k = 0; k < level_; ++k) out[static_cast<std::size_t>(k)] = static_cast<char>('0' + digit(k));
  return out;
}

std::string Quadcode::text() const { return is_root() ? std::string("@") : digits(); }

Quadcode Quadcode::child(int d) const {
  if (level_ >= kMaxLevel) {
    throw domain_error("quadcode '" + digits() + "' is at maximum level");
  }
  if (d < 0 || d > 3) throw domain_error("child digit out of range");
  return Quadcode(path_ | (static_cast<std::uint32_t>(d) << (30 - 2 * level_)),
                  static_cast<std::uint8_t>(level_ + 1));
}

std::optional<Direction> parse_direction(std::string_view text) {
  std::string up;
  up.reserve(text.size());
  for (char c : text) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "N" || up == "NORTH") return Direction::North;
  if (up == "S" || up == "SOUTH") return Direction::South;
  if (up == "E" || up == "EAST") return Direction::East;
  if (up == "W" || up == "WEST") return Direction::West;
  return std::nullopt;
}

Quadcode encode_cell(std::uint32_t x, std::uint32_t y, int level) {
  if (level < 0 || level > Quadcode::kMaxLevel) {
    throw domain_error("level " + std::to_string(level) + " outside [0, " +
                       std::to_string(Quadcode::kMaxLevel) + "]");
  }
  const std::uint64_t side = std::uint64_t{1} << level;
  if (x >= side || y >= side) {
    throw domain_error("cell (" + std::to_string(x) + ", " + std::to_string(y) +
                       ") outside the level-" + std::to_string(level) + " grid");
  }
  return Quadcode::from_morton(spread_bits(x) | (spread_bits(y) << 1), level);
}

GridCell decode_cell(Quadcode code) noexcept {
  const std::uint32_t m = code.morton();
  return GridCell{compact_bits(m), compact_bits(m >> 1), code.level()};
}

Rect cell_rect(Quadcode code) noexcept {
  const GridCell c = decode_cell(code);
  const double s = std::ldexp(1.0, -c.level);
  return Rect{c.x * s, c.y * s, (c.x + 1) * s, (c.y + 1) * s};
}

Quadcode parent_of(Quadcode code) {
  if (code.is_root()) throw domain_error("the root cell has no parent");
  return Quadcode::from_morton(code.morton() >> 2, code.level() - 1);
}

std::array<Quadcode, 4> children_of(Quadcode code) {
  return {code.child(0), code.child(1), code.child(2), code.child(3)};
}

// Same-level stepping by carry propagation over the interleaved bits: the x
// bits occupy the even positions, the y bits the odd ones. Filling the other
// axis' positions with ones lets +1 carry straight through them.
std::optional<Quadcode> neighbor(Quadcode code, Direction dir) {
  if (code.is_root()) throw domain_error("the root cell has no neighbour");
  const std::uint64_t width = level_mask(code.level());
  const std::uint64_t xmask = 0x5555555555555555ull & width;
  const std::uint64_t ymask = xmask << 1;
  const std::uint64_t m = code.morton();

  auto step_up = [&](std::uint64_t axis, std::uint64_t other) -> std::optional<std::uint64_t> {
    const std::uint64_t part = m & axis;
    if (part == axis) return std::nullopt;
    return (((part | other) + 1) & axis) | (m & other);
  };
  auto step_down = [&](std::uint64_t axis, std::uint64_t other) -> std::optional<std::uint64_t> {
    const std::uint64_t part = m & axis;
    if (part == 0) return std::nullopt;
    return ((part - 1) & axis) | (m & other);
  };

  std::optional<std::uint64_t> next;
  switch (dir) {
    case Direction::East: next = step_up(xmask, ymask); break;
    case Direction::West: next = step_down(xmask, ymask); break;
    case Direction::South: next = step_up(ymask, xmask); break;
    case Direction::North: next = step_down(ymask, xmask); break;
  }
  if (!next) return std::nullopt;
  return Quadcode::from_morton(static_cast<std::uint32_t>(*next), code.level());
}

double dist(Quadcode a, Quadcode b) noexcept {
  const Rect ra = cell_rect(a);
  const Rect rb = cell_rect(b);
  const double dx = (ra.x0 + ra.x1) / 2 - (rb.x0 + rb.x1) / 2;
  const double dy = (ra.y0 + ra.y1) / 2 - (rb.y0 + rb.y1) / 2;
  return std::hypot(dx, dy);
}

bool adjacent(Quadcode a, Quadcode b) noexcept {
  if (contains(a, b) || contains(b, a)) return false;
  // Integer rectangles on the grid of the finer code.
  const int level = std::max(a.level(), b.level());
  auto bounds = [level](Quadcode c) {
    const GridCell g = decode_cell(c);
    const std::int64_t scale = std::int64_t{1} << (level - g.level);
    return std::array<std::int64_t, 4>{g.x * scale, g.y * scale, (g.x + 1) * scale,
                                       (g.y + 1) * scale};
  };
  const auto [ax0, ay0, ax1, ay1] = bounds(a);
  const auto [bx0, by0, bx1, by1] = bounds(b);
  const bool x_touch = ax1 == bx0 || bx1 == ax0;
  const bool y_touch = ay1 == by0 || by1 == ay0;
  const bool x_overlap = std::min(ax1, bx1) > std::max(ax0, bx0);
  const bool y_overlap = std::min(ay1, by1) > std::max(ay0, by0);
  return (x_touch && y_overlap) || (y_touch && x_overlap);
}

double cell_area(Quadcode code) noexcept { return std::ldexp(1.0, -2 * code.level()); }

}  // namespace spl
