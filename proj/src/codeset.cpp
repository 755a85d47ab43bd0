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

#include "spl/codeset.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "spl/error.hpp"

namespace spl {

namespace {

bool completes_quadruple(std::span<const Quadcode> tail) {
  const int level = tail[0].level();
  if (level == 0) return false;
  const std::uint32_t parent = tail[0].morton() >> 2;
  for (int d = 0; d < 4; ++d) {
    const Quadcode c = tail[static_cast<std::size_t>(d)];
    if (c.level() != level || (c.morton() >> 2) != parent ||
        (c.morton() & 3u) != static_cast<std::uint32_t>(d)) {
      return false;
    }
  }
  return true;
}

// One counting pass on the leading differing key bits, sized so buckets
// hold a few hundred codes, then an in-cache sort of each bucket.
void bucket_sort(std::vector<Quadcode>& codes) {
  std::uint64_t differ = 0;
  for (const Quadcode c : codes) differ |= c.key() ^ codes.front().key();
  if (differ == 0) return;
  const int high = 64 - std::countl_zero(differ);
  const int wanted = std::bit_width(codes.size() / 256);
  const int bits = std::clamp(wanted, 1, std::min(high, 16));
  const int shift = high - bits;
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  std::vector<std::size_t> start((std::size_t{1} << bits) + 1);
  for (const Quadcode c : codes) ++start[((c.key() >> shift) & mask) + 1];
  std::inclusive_scan(start.begin(), start.end(), start.begin());
  std::vector<Quadcode> out(codes.size());
  std::vector<std::size_t> next(start.begin(), start.end() - 1);
  for (const Quadcode c : codes) out[next[(c.key() >> shift) & mask]++] = c;
  for (std::size_t i = 0; i + 1 < start.size(); ++i) {
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start[i]), out.begin() + static_cast<std::ptrdiff_t>(start[i + 1]));
  }
  codes.swap(out);
}

}  // namespace

// Descendants of a code follow it contiguously in canonical order, so one
// pass with a stack both drops covered codes and merges quadruples.
CodeSet CodeSet::condense_sorted(std::span<const Quadcode> sorted) {
  std::vector<Quadcode> out;
  out.reserve(sorted.size());
  for (const Quadcode c : sorted) {
    if (!out.empty() && contains(out.back(), c)) continue;
    out.push_back(c);
    while (out.size() >= 4 &&
           completes_quadruple(std::span<const Quadcode>(out).last(4))) {
      const Quadcode parent = parent_of(out.back());
      out.resize(out.size() - 4);
      out.push_back(parent);
    }
  }
  return CodeSet(std::move(out));
}

CodeSet CodeSet::normalize(std::vector<Quadcode> codes) {
  if (std::is_sorted(codes.begin(), codes.end())) return condense_sorted(codes);
  if (codes.size() < 4096) {
    std::sort(codes.begin(), codes.end());
  } else {
    bucket_sort(codes);
  }
  return condense_sorted(codes);
}

int CodeSet::max_level() const noexcept {
  int level = 0;
  for (const Quadcode c : codes_) level = std::max(level, c.level());
  return level;
}

std::optional<Quadcode> CodeSet::covering(Quadcode cell) const noexcept {
  // The only member that can be an ancestor of `cell` is the greatest
  // member not after it.
  auto it = std::upper_bound(codes_.begin(), codes_.end(), cell);
  if (it == codes_.begin()) return std::nullopt;
  --it;
  if (contains(*it, cell)) return *it;
  return std::nullopt;
}

CodeSet set_union(const CodeSet& a, const CodeSet& b) {
  std::vector<Quadcode> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  return CodeSet::condense_sorted(merged);
}

CodeSet set_intersect(const CodeSet& a, const CodeSet& b) {
  std::vector<Quadcode> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Quadcode x = a.codes_[i];
    const Quadcode y = b.codes_[j];
    if (contains(x, y)) {
      out.push_back(y);
      ++j;
    } else if (contains(y, x)) {
      out.push_back(x);
      ++i;
    } else if (x < y) {
      ++i;
    } else {
      ++j;
    }
  }
  return CodeSet::normalize(std::move(out));
}

namespace {

// `holes` are sorted, disjoint and each contained in `cell`.
void subtract_cell(Quadcode cell, std::span<const Quadcode> holes, std::vector<Quadcode>& out) {
  if (holes.empty()) {
    out.push_back(cell);
    return;
  }
  if (holes.front() == cell) return;
  if (cell.level() >= Quadcode::kMaxLevel) {
    throw Error(sqlstate::kDepthOverflow,
                "difference would split '" + cell.digits() + "' beyond the maximum level");
  }
  std::size_t k = 0;
  for (int d = 0; d < 4; ++d) {
    const Quadcode child = cell.child(d);
    const std::size_t begin = k;
    while (k < holes.size() && contains(child, holes[k])) ++k;
    subtract_cell(child, holes.subspan(begin, k - begin), out);
  }
}

}  // namespace

CodeSet set_difference(const CodeSet& a, const CodeSet& b) {
  std::vector<Quadcode> out;
  const auto& bs = b.codes();
  std::size_t j = 0;
  for (const Quadcode x : a) {
    while (j < bs.size() && bs[j] < x && !contains(bs[j], x)) ++j;
    if (j < bs.size() && contains(bs[j], x)) continue;
    std::size_t k = j;
    while (k < bs.size() && contains(x, bs[k])) ++k;
    subtract_cell(x, std::span<const Quadcode>(bs).subspan(j, k - j), out);
    j = k;
  }
  return CodeSet::condense_sorted(out);
}

double set_area(const CodeSet& a) noexcept {
  double total = 0;
  for (const Quadcode c : a) total += cell_area(c);
  return total;
}

CodeSet frontier(const CodeSet& a, std::optional<int> working_level) {
  if (a.empty()) return {};
  const int deepest = a.max_level();
  const int level = working_level.value_or(deepest);
  if (level < deepest || level > Quadcode::kMaxLevel) {
    throw domain_error("frontier working level " + std::to_string(level) +
                       " must lie in [" + std::to_string(deepest) + ", " +
                       std::to_string(Quadcode::kMaxLevel) + "]");
  }
  const std::int64_t grid = std::int64_t{1} << level;
  auto outside = [&](std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0 || x >= grid || y >= grid) return true;
    return !a.covers(encode_cell(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), level));
  };

  std::vector<Quadcode> cells;
  for (const Quadcode c : a) {
    const GridCell g = decode_cell(c);
    const std::int64_t scale = std::int64_t{1} << (level - g.level);
    const std::int64_t x0 = g.x * scale, y0 = g.y * scale;
    const std::int64_t x1 = x0 + scale - 1, y1 = y0 + scale - 1;
    // Only cells on the block's rim can have an outside neighbour.
    auto visit = [&](std::int64_t x, std::int64_t y) {
      const bool border = (x == x0 && outside(x - 1, y)) || (x == x1 && outside(x + 1, y)) ||
                          (y == y0 && outside(x, y - 1)) || (y == y1 && outside(x, y + 1));
      if (border) {
        cells.push_back(encode_cell(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), level));
      }
    };
    for (std::int64_t x = x0; x <= x1; ++x) {
      visit(x, y0);
      if (y1 != y0) visit(x, y1);
    }
    for (std::int64_t y = y0 + 1; y < y1; ++y) {
      visit(x0, y);
      if (x1 != x0) visit(x1, y);
    }
  }
  return CodeSet::normalize(std::move(cells));
}

std::vector<CodeSet> components(const CodeSet& a) {
  const auto& codes = a.codes();
  std::vector<std::size_t> parent(codes.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  auto unite = [&](std::size_t i, std::size_t j) {
    i = find(i);
    j = find(j);
    if (i != j) parent[std::max(i, j)] = std::min(i, j);
  };
  auto index_of = [&](Quadcode c) {
    return static_cast<std::size_t>(std::lower_bound(codes.begin(), codes.end(), c) - codes.begin());
  };

  for (std::size_t i = 0; i < codes.size(); ++i) {
    const Quadcode c = codes[i];
    if (c.is_root()) continue;
    for (Direction dir : {Direction::North, Direction::South, Direction::East, Direction::West}) {
      const auto n = neighbor(c, dir);
      if (!n) continue;
      if (const auto owner = a.covering(*n)) {
        unite(i, index_of(*owner));
        continue;
      }
      for (std::size_t k = index_of(*n); k < codes.size() && contains(*n, codes[k]); ++k) {
        if (adjacent(c, codes[k])) unite(i, k);
      }
    }
  }

  // Roots are the smallest index of each component, so visiting indices in
  // order yields components ordered by their smallest code.
  std::vector<std::vector<Quadcode>> groups;
  std::vector<std::size_t> slot(codes.size(), SIZE_MAX);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(codes[i]);
  }
  std::vector<CodeSet> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.push_back(CodeSet::normalize(std::move(g)));
  return out;
}

}  // namespace spl
