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

#include "spl/geometry_io.hpp"

#include <algorithm>

namespace spl {

using nlohmann::json;

namespace {

Error bad(const std::string& msg) { return Error(sqlstate::kInvalidGeometry, msg); }

WorldPoint point_from(const json& p) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
    throw bad("a coordinate must be [x, y], got " + p.dump());
  }
  return {p[0].get<double>(), p[1].get<double>()};
}

std::vector<WorldPoint> ring_from(const json& a) {
  if (!a.is_array()) throw bad("coordinates must be an array of [x, y] pairs");
  std::vector<WorldPoint> out;
  for (const json& p : a) out.push_back(point_from(p));
  return out;
}

}  // namespace

EntityRequest entity_from_json(const json& j) {
  if (!j.is_object()) throw bad("an entity must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw bad("entity needs a string \"kind\"");
  if (!j.contains("name") || !j["name"].is_string()) throw bad("entity needs a string \"name\"");
  if (!j.contains("coords")) throw bad("entity needs \"coords\"");
  EntityRequest req;
  Entity& e = req.entity;
  e.kind = parse_entity_kind(j["kind"].get<std::string>());
  e.name = j["name"].get<std::string>();
  if (e.name.empty()) throw bad("entity name must not be empty");
  const json& c = j["coords"];
  if (e.kind == EntityKind::Point && c.is_array() && c.size() == 2 && c[0].is_number()) {
    e.coords = {point_from(c)};
  } else {
    e.coords = ring_from(c);
  }
  if (j.contains("holes") && !j["holes"].is_null()) {
    if (e.kind != EntityKind::Area) throw bad("only areas may have holes");
    if (!j["holes"].is_array()) throw bad("\"holes\" must be an array of rings");
    for (const json& h : j["holes"]) e.holes.push_back(ring_from(h));
  }
  if (j.contains("level") && !j["level"].is_null()) {
    if (!j["level"].is_number_integer()) throw bad("\"level\" must be an integer");
    const auto lvl = j["level"].get<long long>();
    if (lvl < 0 || lvl > Quadcode::kMaxLevel) {
      throw domain_error("level " + std::to_string(lvl) + " outside [0, " + std::to_string(Quadcode::kMaxLevel) + "]");
    }
    req.level = static_cast<int>(lvl);
  }
  return req;
}

GeometryDocument read_geometry(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw bad(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw bad("geometry document must be a JSON object");
  GeometryDocument out;
  if (doc.contains("window")) {
    const json& w = doc["window"];
    if (!w.is_array() || w.size() != 4 || !std::all_of(w.begin(), w.end(), [](const json& v) { return v.is_number(); })) {
      throw bad("\"window\" must be [min_x, min_y, max_x, max_y]");
    }
    out.window = Window{w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()};
    WorldTransform check(*out.window);
  }
  if (!doc.contains("entities") || !doc["entities"].is_array()) throw bad("document needs an \"entities\" array");
  const json& ents = doc["entities"];
  for (std::size_t i = 0; i < ents.size(); ++i) {
    ImportEntry entry;
    entry.index = i;
    try {
      entry.request = entity_from_json(ents[i]);
    } catch (const Error& e) {
      entry.error = Error(e.state(), "entity " + std::to_string(i) + ": " + e.what());
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

json rects_json(const std::vector<Quadcode>& codes) {
  json out = json::array();
  for (const Quadcode c : codes) {
    const Rect r = cell_rect(c);
    out.push_back({r.x0, r.y0, r.x1, r.y1});
  }
  return out;
}

json codes_json(const std::vector<Quadcode>& codes) {
  json out = json::array();
  for (const Quadcode c : codes) out.push_back(c.text());
  return out;
}

}  // namespace spl
