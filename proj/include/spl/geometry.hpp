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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spl/codeset.hpp"
#include "spl/quadcode.hpp"

namespace spl {

//! Unit-square coordinates are quantised to multiples of 2^-kFixedBits so that
//! every rasterisation predicate is evaluated exactly in integer arithmetic.
//! Cell boundaries at any level <= Quadcode::kMaxLevel are lattice lines.
inline constexpr int kFixedBits = 40;
inline constexpr std::int64_t kFixedOne = std::int64_t{1} << kFixedBits;

struct WorldPoint {
  double x = 0;
  double y = 0;

  friend bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

//! Unit-square point in fixed-point units, each coordinate in [0, kFixedOne].
struct FixedPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

struct Window {
  double min_x = 0, min_y = 0, max_x = 1, max_y = 1;

  friend bool operator==(const Window&, const Window&) = default;
};

//! Affine map of a world window onto the unit square. Grid row 0 is the
//! window's min_y edge and rows grow with world y, so a renderer drawing a
//! north-up map flips the rows, not the codes.
class WorldTransform {
 public:
  //! Throws SP004 unless max_x > min_x and max_y > min_y (finite).
  explicit WorldTransform(Window window = {});

  const Window& window() const noexcept { return window_; }

  //! Half-open membership: min edges included, max edges excluded.
  bool contains(WorldPoint p) const noexcept;
  //! Closed membership, used for segment and ring vertices.
  bool contains_closed(WorldPoint p) const noexcept;

  //! Throws SP001 when p is outside the closed window.
  FixedPoint to_fixed(WorldPoint p) const;

  friend bool operator==(const WorldTransform&, const WorldTransform&) = default;

 private:
  Window window_;
};

struct Polyline {
  std::vector<WorldPoint> vertices;
};

struct Polygon {
  std::vector<WorldPoint> outer;
  std::vector<std::vector<WorldPoint>> holes;
};

//! Cell holding p under the half-open rule. Throws SP001 outside the window.
GridCell world_to_grid(const WorldTransform& t, WorldPoint p, int level);

CodeSet raster_point(const WorldTransform& t, WorldPoint p, int level);

//! Supercover: every level-`level` cell whose half-open square the closed
//! segment touches, and no other. Sorted canonically.
std::vector<Quadcode> raster_segment(const WorldTransform& t, WorldPoint p, WorldPoint q, int level);

//! Union of the segment covers. Uniform level unless `condense` is set, in
//! which case the result is in normal form.
std::vector<Quadcode> raster_polyline(const WorldTransform& t, const Polyline& line, int level,
                                      bool condense = false);

//! Even-odd fill over cell centres united with the cells whose open interior
//! meets the boundary, condensed. An edge lying on a grid line therefore
//! claims no cell on its outer side. Zero-area polygons yield the empty set.
CodeSet raster_polygon(const WorldTransform& t, const Polygon& poly, int level);

// Fixed-point entry points, used by the world-coordinate wrappers above.
std::vector<Quadcode> segment_cover(FixedPoint p, FixedPoint q, int level);
CodeSet polygon_cover(const std::vector<std::vector<FixedPoint>>& rings, int level);

enum class EntityKind { Point, Line, Area };

std::string_view to_string(EntityKind kind) noexcept;
//! Accepts "point", "line", "area" (any case).
EntityKind parse_entity_kind(std::string_view text);
//! Standard table for an entity kind: POINTS, LINES or AREAS.
std::string_view table_for(EntityKind kind) noexcept;

struct Entity {
  EntityKind kind = EntityKind::Point;
  std::string name;
  std::vector<WorldPoint> coords;
  std::vector<std::vector<WorldPoint>> holes;
};

//! Codes stored for an entity: the point cell, the uncondensed line cover,
//! or the condensed area.
std::vector<Quadcode> encode_entity(const WorldTransform& t, const Entity& entity, int level);

}  // namespace spl
