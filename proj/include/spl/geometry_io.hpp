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
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spl/error.hpp"
#include "spl/geometry.hpp"

namespace spl {

//! One entity object: {"kind", "name", "coords", "holes"?, "level"?}.
//! A point may give its coordinates as [x, y] or [[x, y]]. Throws SP004
//! for a malformed object.
struct EntityRequest {
  Entity entity;
  std::optional<int> level;
};
EntityRequest entity_from_json(const nlohmann::json& j);

struct ImportEntry {
  std::size_t index = 0;
  std::optional<EntityRequest> request;
  //! Set instead of `request` when the entry is unusable.
  std::optional<Error> error;
};

//! {"window": [minx, miny, maxx, maxy]?, "entities": [...]}. Entries are
//! decoded independently so one bad entity does not hide the rest. Throws
//! SP004 when the document itself is malformed.
struct GeometryDocument {
  std::optional<Window> window;
  std::vector<ImportEntry> entries;
};
GeometryDocument read_geometry(std::string_view json_text);

//! [x0, y0, x1, y1] rectangles in unit-square coordinates.
nlohmann::json rects_json(const std::vector<Quadcode>& codes);
nlohmann::json codes_json(const std::vector<Quadcode>& codes);

}  // namespace spl
