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
#include <span>
#include <vector>

#include "spl/quadcode.hpp"

namespace spl {

//! A region at mixed resolution: a sorted, pairwise-disjoint list of
//! quadcodes with no complete sibling quadruples. Only reachable through
//! normalisation, so every instance is in normal form.
class CodeSet {
 public:
  using const_iterator = std::vector<Quadcode>::const_iterator;

  CodeSet() = default;

  //! Removes covered codes, merges complete sibling quadruples into their
  //! parent until fixpoint and sorts canonically.
  static CodeSet normalize(std::vector<Quadcode> codes);
  static CodeSet normalize(std::span<const Quadcode> codes) {
    return normalize(std::vector<Quadcode>(codes.begin(), codes.end()));
  }
  static CodeSet root() { return CodeSet(std::vector<Quadcode>{Quadcode{}}); }

  const std::vector<Quadcode>& codes() const noexcept { return codes_; }
  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }
  const_iterator begin() const noexcept { return codes_.begin(); }
  const_iterator end() const noexcept { return codes_.end(); }

  //! Deepest level present; 0 for the empty set.
  int max_level() const noexcept;

  //! Member code containing `cell`, if any (point-set membership of a cell).
  std::optional<Quadcode> covering(Quadcode cell) const noexcept;
  bool covers(Quadcode cell) const noexcept { return covering(cell).has_value(); }

  friend bool operator==(const CodeSet&, const CodeSet&) = default;

 private:
  explicit CodeSet(std::vector<Quadcode> codes) : codes_(std::move(codes)) {}
  // Input sorted canonically; output in normal form.
  static CodeSet condense_sorted(std::span<const Quadcode> sorted);

  friend CodeSet set_union(const CodeSet&, const CodeSet&);
  friend CodeSet set_intersect(const CodeSet&, const CodeSet&);
  friend CodeSet set_difference(const CodeSet&, const CodeSet&);

  std::vector<Quadcode> codes_;
};

CodeSet set_union(const CodeSet& a, const CodeSet& b);
CodeSet set_intersect(const CodeSet& a, const CodeSet& b);
//! Points of `a` not in `b`. Codes of `a` that strictly contain codes of `b`
//! are split recursively down to the depth of the subtrahend.
CodeSet set_difference(const CodeSet& a, const CodeSet& b);

//! Sum of 4^-level over the members; the root set has area 1.
double set_area(const CodeSet& a) noexcept;

//! Cells of `a` with at least one 4-neighbour outside `a`; the grid border
//! counts as outside. Evaluated at `working_level` (default: the deepest
//! level present), then re-normalised.
CodeSet frontier(const CodeSet& a, std::optional<int> working_level = std::nullopt);

//! Maximal edge-connected subsets, ordered by their smallest code.
std::vector<CodeSet> components(const CodeSet& a);

}  // namespace spl
