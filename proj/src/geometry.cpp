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

#include "spl/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "spl/error.hpp"

namespace spl {

namespace {

__extension__ typedef __int128 i128;

i128 floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

i128 ceil_div(i128 num, i128 den) { return -floor_div(-num, den); }

// num / den with den > 0.
struct Frac {
  i128 num = 0;
  i128 den = 1;
};

int compare(const Frac& a, const Frac& b) {
  const i128 l = a.num * b.den;
  const i128 r = b.num * a.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

Frac make_frac(i128 num, i128 den) {
  if (den < 0) return Frac{-num, -den};
  return Frac{num, den};
}

// Parameter interval of a segment, each end open or closed.
struct TInterval {
  Frac lo{0, 1}, hi{1, 1};
  bool lo_open = false, hi_open = false;

  void raise(Frac v, bool open) {
    const int c = compare(v, lo);
    if (c > 0 || (c == 0 && open)) {
      lo = v;
      lo_open = open;
    }
  }
  void lower(Frac v, bool open) {
    const int c = compare(v, hi);
    if (c < 0 || (c == 0 && open)) {
      hi = v;
      hi_open = open;
    }
  }
  bool empty() const {
    const int c = compare(lo, hi);
    return c > 0 || (c == 0 && (lo_open || hi_open));
  }
};

void check_level(int level) {
  if (level < 0 || level > Quadcode::kMaxLevel) {
    throw domain_error("level " + std::to_string(level) + " outside [0, " +
                       std::to_string(Quadcode::kMaxLevel) + "]");
  }
}

Quadcode cell_code(i128 x, i128 y, int level) {
  return encode_cell(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), level);
}

Error invalid_geometry(const std::string& message) {
  return Error(sqlstate::kInvalidGeometry, message);
}

}  // namespace

// --- transform ----------------------------------------------------------

WorldTransform::WorldTransform(Window window) : window_(window) {
  const bool finite = std::isfinite(window.min_x) && std::isfinite(window.min_y) &&
                      std::isfinite(window.max_x) && std::isfinite(window.max_y);
  if (!finite || !(window.max_x > window.min_x) || !(window.max_y > window.min_y)) {
    throw invalid_geometry("window must satisfy max_x > min_x and max_y > min_y");
  }
}

bool WorldTransform::contains(WorldPoint p) const noexcept {
  return p.x >= window_.min_x && p.x < window_.max_x && p.y >= window_.min_y && p.y < window_.max_y;
}

bool WorldTransform::contains_closed(WorldPoint p) const noexcept {
  return p.x >= window_.min_x && p.x <= window_.max_x && p.y >= window_.min_y &&
         p.y <= window_.max_y;
}

FixedPoint WorldTransform::to_fixed(WorldPoint p) const {
  if (!contains_closed(p)) {
    throw Error(sqlstate::kOutOfWindow, "point (" + std::to_string(p.x) + ", " +
                                            std::to_string(p.y) + ") lies outside the window");
  }
  auto axis = [](double v, double lo, double hi) {
    const double u = (v - lo) / (hi - lo);
    const double scaled = std::floor(std::ldexp(u, kFixedBits));
    return std::clamp(static_cast<std::int64_t>(scaled), std::int64_t{0}, kFixedOne);
  };
  return FixedPoint{axis(p.x, window_.min_x, window_.max_x), axis(p.y, window_.min_y, window_.max_y)};
}

GridCell world_to_grid(const WorldTransform& t, WorldPoint p, int level) {
  check_level(level);
  if (!t.contains(p)) {
    throw Error(sqlstate::kOutOfWindow, "point (" + std::to_string(p.x) + ", " +
                                            std::to_string(p.y) + ") lies outside the window");
  }
  FixedPoint f = t.to_fixed(p);
  // Rounding can push a point just below the max edge onto it.
  f.x = std::min(f.x, kFixedOne - 1);
  f.y = std::min(f.y, kFixedOne - 1);
  const int shift = kFixedBits - level;
  return GridCell{static_cast<std::uint32_t>(f.x >> shift), static_cast<std::uint32_t>(f.y >> shift),
                  level};
}

CodeSet raster_point(const WorldTransform& t, WorldPoint p, int level) {
  const GridCell c = world_to_grid(t, p, level);
  return CodeSet::normalize(std::vector<Quadcode>{encode_cell(c.x, c.y, c.level)});
}

// --- segments -----------------------------------------------------------

namespace {

// Emits the supercover column by column: clip the parameter range to the
// column's half-open slab, then take the rows spanned by the clipped piece.
template <typename Emit>
void walk_segment(FixedPoint p, FixedPoint q, int level, Emit&& emit) {
  const i128 side = i128{1} << level;
  const i128 s = i128{1} << (kFixedBits - level);
  const i128 dx = q.x - p.x;
  const i128 dy = q.y - p.y;

  const i128 first_col = std::min(p.x, q.x) / s;
  const i128 last_col = std::min<i128>(std::max(p.x, q.x) / s, side - 1);
  for (i128 col = first_col; col <= last_col; ++col) {
    const i128 x0 = col * s, x1 = x0 + s;
    TInterval t;
    if (dx == 0) {
      if (p.x < x0 || p.x >= x1) continue;
    } else if (dx > 0) {
      t.raise(make_frac(x0 - p.x, dx), false);
      t.lower(make_frac(x1 - p.x, dx), true);
    } else {
      t.lower(make_frac(p.x - x0, -dx), false);
      t.raise(make_frac(p.x - x1, -dx), true);
    }
    if (t.empty()) continue;

    auto y_at = [&](const Frac& f) { return Frac{p.y * f.den + dy * f.num, f.den}; };
    Frac lo_y = y_at(t.lo), hi_y = y_at(t.hi);
    bool lo_open = t.lo_open, hi_open = t.hi_open;
    if (dy == 0) {
      lo_open = hi_open = false;
    } else if (dy < 0) {
      std::swap(lo_y, hi_y);
      std::swap(lo_open, hi_open);
    }
    const i128 first_row = floor_div(lo_y.num, lo_y.den * s);
    i128 last_row = hi_open ? ceil_div(hi_y.num, hi_y.den * s) - 1 : floor_div(hi_y.num, hi_y.den * s);
    last_row = std::min(last_row, side - 1);
    for (i128 row = first_row; row <= last_row; ++row) emit(col, row);
  }
}

// Cells whose open interior meets the closed segment. Used for polygon
// boundaries so that an edge lying on a grid line claims neither side.
template <typename Emit>
void walk_segment_open(FixedPoint p, FixedPoint q, int level, Emit&& emit) {
  const i128 side = i128{1} << level;
  const i128 s = i128{1} << (kFixedBits - level);
  const i128 dx = q.x - p.x;
  const i128 dy = q.y - p.y;

  const i128 first_col = std::min(p.x, q.x) / s;
  const i128 last_col = std::min<i128>(std::max(p.x, q.x) / s, side - 1);
  for (i128 col = first_col; col <= last_col; ++col) {
    const i128 x0 = col * s, x1 = x0 + s;
    TInterval t;
    if (dx == 0) {
      if (p.x <= x0 || p.x >= x1) continue;
    } else if (dx > 0) {
      t.raise(make_frac(x0 - p.x, dx), true);
      t.lower(make_frac(x1 - p.x, dx), true);
    } else {
      t.lower(make_frac(p.x - x0, -dx), true);
      t.raise(make_frac(p.x - x1, -dx), true);
    }
    if (t.empty()) continue;

    auto y_at = [&](const Frac& f) { return Frac{p.y * f.den + dy * f.num, f.den}; };
    Frac lo_y = y_at(t.lo), hi_y = y_at(t.hi);
    if (dy < 0) std::swap(lo_y, hi_y);
    if (dy == 0) {
      // A horizontal piece only enters rows it does not lie on the edge of.
      if (p.y % s == 0) continue;
      emit(col, i128{p.y} / s);
      continue;
    }
    const i128 first_row = floor_div(lo_y.num, lo_y.den * s);
    const i128 last_row = std::min(ceil_div(hi_y.num, hi_y.den * s) - 1, side - 1);
    for (i128 row = first_row; row <= last_row; ++row) emit(col, row);
  }
}

}  // namespace

std::vector<Quadcode> segment_cover(FixedPoint p, FixedPoint q, int level) {
  check_level(level);
  std::vector<Quadcode> out;
  walk_segment(p, q, level, [&](i128 x, i128 y) { out.push_back(cell_code(x, y, level)); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Quadcode> raster_segment(const WorldTransform& t, WorldPoint p, WorldPoint q, int level) {
  return segment_cover(t.to_fixed(p), t.to_fixed(q), level);
}

std::vector<Quadcode> raster_polyline(const WorldTransform& t, const Polyline& line, int level,
                                      bool condense) {
  check_level(level);
  if (line.vertices.size() < 2) throw invalid_geometry("a polyline needs at least two vertices");
  const bool zero_length = std::all_of(line.vertices.begin(), line.vertices.end(),
                                       [&](const WorldPoint& v) { return v == line.vertices.front(); });
  if (zero_length) throw invalid_geometry("a polyline must have non-zero length");

  std::vector<FixedPoint> pts;
  pts.reserve(line.vertices.size());
  for (const WorldPoint& v : line.vertices) pts.push_back(t.to_fixed(v));
  std::vector<Quadcode> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    walk_segment(pts[i], pts[i + 1], level, [&](i128 x, i128 y) { out.push_back(cell_code(x, y, level)); });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (condense) return CodeSet::normalize(std::move(out)).codes();
  return out;
}

// --- polygons -----------------------------------------------------------

namespace {

i128 cross(FixedPoint o, FixedPoint a, FixedPoint b) {
  return static_cast<i128>(a.x - o.x) * (b.y - o.y) - static_cast<i128>(a.y - o.y) * (b.x - o.x);
}

int sign(i128 v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

bool on_segment(FixedPoint a, FixedPoint b, FixedPoint p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(FixedPoint a, FixedPoint b, FixedPoint c, FixedPoint d) {
  const int d1 = sign(cross(c, d, a)), d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c)), d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
         (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
}

bool collinear(const std::vector<FixedPoint>& ring) {
  for (std::size_t i = 2; i < ring.size(); ++i) {
    if (cross(ring[0], ring[1], ring[i]) != 0) return false;
  }
  return true;
}

bool is_simple(const std::vector<FixedPoint>& ring) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const FixedPoint a = ring[i], b = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const FixedPoint c = ring[j], d = ring[(j + 1) % n];
      const bool neighbours = j == i + 1 || (i == 0 && j == n - 1);
      if (neighbours) {
        // Consecutive edges share one vertex; they may not fold back.
        const FixedPoint shared = j == i + 1 ? b : a;
        const FixedPoint other_ab = j == i + 1 ? a : b;
        const FixedPoint other_cd = j == i + 1 ? d : c;
        if (cross(shared, other_ab, other_cd) == 0) {
          const i128 dot = static_cast<i128>(other_ab.x - shared.x) * (other_cd.x - shared.x) +
                           static_cast<i128>(other_ab.y - shared.y) * (other_cd.y - shared.y);
          if (dot > 0) return false;
        }
        continue;
      }
      if (segments_touch(a, b, c, d)) return false;
    }
  }
  return true;
}

// Inside or on the boundary.
bool point_in_ring(const std::vector<FixedPoint>& ring, FixedPoint p) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const FixedPoint a = ring[j], b = ring[i];
    if (cross(a, b, p) == 0 && on_segment(a, b, p)) return true;
    if ((a.y <= p.y) != (b.y <= p.y)) {
      // Crossing x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y) lies right of p.
      const i128 lhs = static_cast<i128>(p.x - a.x) * (b.y - a.y);
      const i128 rhs = static_cast<i128>(p.y - a.y) * (b.x - a.x);
      if ((b.y > a.y) ? lhs < rhs : lhs > rhs) inside = !inside;
    }
  }
  return inside;
}

std::vector<FixedPoint> clean_ring(std::vector<FixedPoint> ring) {
  ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  return ring;
}

using Span = std::pair<std::int64_t, std::int64_t>;  // inclusive column range

struct RowSpans {
  std::vector<std::vector<Span>> rows;

  bool covers(std::int64_t row, std::int64_t a, std::int64_t b) const {
    const auto& spans = rows[static_cast<std::size_t>(row)];
    auto it = std::upper_bound(spans.begin(), spans.end(), Span{a, INT64_MAX});
    if (it == spans.begin()) return false;
    --it;
    return it->first <= a && it->second >= b;
  }
  bool touches(std::int64_t row, std::int64_t a, std::int64_t b) const {
    const auto& spans = rows[static_cast<std::size_t>(row)];
    auto it = std::lower_bound(spans.begin(), spans.end(), a,
                               [](const Span& s, std::int64_t v) { return s.second < v; });
    return it != spans.end() && it->first <= b;
  }
};

void build_blocks(const RowSpans& spans, Quadcode block, int level, std::vector<Quadcode>& out) {
  const GridCell g = decode_cell(block);
  const std::int64_t scale = std::int64_t{1} << (level - g.level);
  const std::int64_t x0 = g.x * scale, y0 = g.y * scale;
  const std::int64_t x1 = x0 + scale - 1;
  bool full = true, empty = true;
  for (std::int64_t y = y0; y < y0 + scale && (full || empty); ++y) {
    if (full && !spans.covers(y, x0, x1)) full = false;
    if (empty && spans.touches(y, x0, x1)) empty = false;
  }
  if (full) {
    out.push_back(block);
    return;
  }
  if (empty) return;
  for (int d = 0; d < 4; ++d) build_blocks(spans, block.child(d), level, out);
}

}  // namespace

CodeSet polygon_cover(const std::vector<std::vector<FixedPoint>>& input_rings, int level) {
  check_level(level);
  if (input_rings.empty()) throw invalid_geometry("a polygon needs an outer ring");
  std::vector<std::vector<FixedPoint>> rings;
  for (const auto& r : input_rings) rings.push_back(clean_ring(r));
  for (const auto& r : rings) {
    if (r.size() < 3) throw invalid_geometry("polygon rings need at least three distinct vertices");
  }
  if (collinear(rings.front())) return {};
  for (std::size_t k = 0; k < rings.size(); ++k) {
    if (!is_simple(rings[k])) {
      throw invalid_geometry(k == 0 ? std::string("outer ring is not simple")
                                    : "hole " + std::to_string(k - 1) + " is not simple");
    }
  }
  for (std::size_t k = 1; k < rings.size(); ++k) {
    for (const FixedPoint v : rings[k]) {
      if (!point_in_ring(rings.front(), v)) {
        throw invalid_geometry("hole " + std::to_string(k - 1) + " is not inside the outer ring");
      }
    }
  }

  const std::int64_t side = std::int64_t{1} << level;
  const i128 s = i128{1} << (kFixedBits - level);
  const i128 half = s / 2;  // level <= 16 keeps this exact
  std::vector<std::vector<Frac>> crossings(static_cast<std::size_t>(side));

  for (const auto& ring : rings) {
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
      const FixedPoint a = ring[j], b = ring[i];
      if (a.y == b.y) continue;
      const i128 ymin = std::min(a.y, b.y), ymax = std::max(a.y, b.y);
      // Rows whose centre line satisfies ymin <= yc < ymax.
      const i128 r0 = std::max<i128>(0, ceil_div(ymin - half, s));
      const i128 r1 = std::min<i128>(side - 1, ceil_div(ymax - half, s) - 1);
      for (i128 r = r0; r <= r1; ++r) {
        const i128 yc = r * s + half;
        crossings[static_cast<std::size_t>(r)].push_back(
            make_frac(static_cast<i128>(a.x) * (b.y - a.y) + (yc - a.y) * (b.x - a.x), b.y - a.y));
      }
    }
  }

  RowSpans spans;
  spans.rows.resize(static_cast<std::size_t>(side));
  for (std::int64_t r = 0; r < side; ++r) {
    auto& xs = crossings[static_cast<std::size_t>(r)];
    std::sort(xs.begin(), xs.end(), [](const Frac& a, const Frac& b) { return compare(a, b) < 0; });
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Columns whose centre lies strictly between the two crossings.
      const Frac& a = xs[k];
      const Frac& b = xs[k + 1];
      const i128 c0 = std::max<i128>(0, floor_div(a.num - half * a.den, s * a.den) + 1);
      const i128 c1 = std::min<i128>(side - 1, ceil_div(b.num - half * b.den, s * b.den) - 1);
      if (c0 <= c1) spans.rows[static_cast<std::size_t>(r)].emplace_back(c0, c1);
    }
  }
  for (const auto& ring : rings) {
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
      walk_segment_open(ring[j], ring[i], level, [&](i128 x, i128 y) {
        spans.rows[static_cast<std::size_t>(y)].emplace_back(static_cast<std::int64_t>(x),
                                                             static_cast<std::int64_t>(x));
      });
    }
  }
  for (auto& row : spans.rows) {
    std::sort(row.begin(), row.end());
    std::vector<Span> merged;
    for (const Span& sp : row) {
      if (!merged.empty() && sp.first <= merged.back().second + 1) {
        merged.back().second = std::max(merged.back().second, sp.second);
      } else {
        merged.push_back(sp);
      }
    }
    row = std::move(merged);
  }

  std::vector<Quadcode> blocks;
  build_blocks(spans, Quadcode{}, level, blocks);
  return CodeSet::normalize(std::move(blocks));
}

CodeSet raster_polygon(const WorldTransform& t, const Polygon& poly, int level) {
  std::vector<std::vector<FixedPoint>> rings;
  auto convert = [&](const std::vector<WorldPoint>& ring) {
    std::vector<FixedPoint> out;
    out.reserve(ring.size());
    for (const WorldPoint& v : ring) out.push_back(t.to_fixed(v));
    return out;
  };
  rings.push_back(convert(poly.outer));
  for (const auto& hole : poly.holes) rings.push_back(convert(hole));
  return polygon_cover(rings, level);
}

// --- entities -----------------------------------------------------------

std::string_view to_string(EntityKind kind) noexcept {
  switch (kind) {
    case EntityKind::Point: return "point";
    case EntityKind::Line: return "line";
    case EntityKind::Area: return "area";
  }
  return "point";
}

EntityKind parse_entity_kind(std::string_view text) {
  std::string low;
  for (char c : text) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (low == "point") return EntityKind::Point;
  if (low == "line") return EntityKind::Line;
  if (low == "area") return EntityKind::Area;
  throw invalid_geometry("unknown entity kind '" + std::string(text) + "'");
}

std::string_view table_for(EntityKind kind) noexcept {
  switch (kind) {
    case EntityKind::Point: return "POINTS";
    case EntityKind::Line: return "LINES";
    case EntityKind::Area: return "AREAS";
  }
  return "POINTS";
}

std::vector<Quadcode> encode_entity(const WorldTransform& t, const Entity& entity, int level) {
  switch (entity.kind) {
    case EntityKind::Point:
      if (entity.coords.size() != 1) throw invalid_geometry("a point has exactly one coordinate pair");
      return raster_point(t, entity.coords.front(), level).codes();
    case EntityKind::Line:
      return raster_polyline(t, Polyline{entity.coords}, level, false);
    case EntityKind::Area:
      return raster_polygon(t, Polygon{entity.coords, entity.holes}, level).codes();
  }
  return {};
}

}  // namespace spl
