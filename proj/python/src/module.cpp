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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "json.hpp"
#include "spl/codeset.hpp"
#include "spl/geometry.hpp"
#include "spl/geometry_io.hpp"
#include "spl/quadcode.hpp"
#include "spl/service.hpp"
#include "spl/sql/executor.hpp"
#include "spl/sql/parser.hpp"
#include "spl/sql/printer.hpp"
#include "spl/storage.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const json& e : j) out.append(to_py(e));
      return out;
    }
    default: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
  }
}

json from_py(const py::handle& o) {
  if (o.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(o)) return o.cast<bool>();
  if (py::isinstance<py::int_>(o)) return o.cast<std::int64_t>();
  if (py::isinstance<py::float_>(o)) return o.cast<double>();
  if (py::isinstance<py::str>(o)) return o.cast<std::string>();
  if (py::isinstance<py::dict>(o)) {
    json out = json::object();
    for (const auto& [k, v] : o.cast<py::dict>()) out[py::str(k).cast<std::string>()] = from_py(v);
    return out;
  }
  json out = json::array();
  for (const py::handle& e : o) out.push_back(from_py(e));
  return out;
}

std::vector<spl::Quadcode> parse_codes(const std::vector<std::string>& texts) {
  std::vector<spl::Quadcode> out;
  for (const std::string& t : texts) out.push_back(spl::Quadcode::parse_text(t));
  return out;
}

std::vector<std::string> code_texts(const spl::CodeSet& s) {
  std::vector<std::string> out;
  for (const spl::Quadcode c : s) out.push_back(c.text());
  return out;
}

std::optional<std::string> opt_text(const std::optional<spl::Quadcode>& c) {
  if (!c) return std::nullopt;
  return c->text();
}

spl::Direction direction(const std::string& text) {
  const auto d = spl::parse_direction(text);
  if (!d) throw spl::domain_error("unknown direction '" + text + "'");
  return *d;
}

// A database directory opened for statements; writes are saved on commit.
class Db {
 public:
  explicit Db(const std::string& path) : path_(path), store_(spl::open_or_create(path)) {
    spl::persist_to(store_, path_);
  }

  py::object execute(const std::string& text) {
    py::list results;
    spl::sql::run_script(store_, text, [&](const spl::sql::Statement&, const spl::sql::Outcome& o) {
      results.append(to_py(spl::outcome_json(o)));
    });
    return results;
  }

  py::object query(const std::string& text, const py::dict& bindings) {
    const spl::sql::Bindings b = spl::bindings_from_json(from_py(bindings));
    return to_py(spl::outcome_json(spl::sql::run(store_, spl::sql::parse_statement(text), b)));
  }

  py::object store_entity(const py::dict& entity) {
    const spl::EntityRequest req = spl::entity_from_json(from_py(entity));
    const spl::StoreResult r = store_.write([&](spl::Database& db) { return db.store_entity(req.entity, req.level); });
    py::dict out;
    out["table"] = r.table;
    out["stored_codes"] = r.stored;
    out["warning"] = r.warning ? py::object(py::str(*r.warning)) : py::none();
    return out;
  }

  std::vector<std::string> entity_codes(const std::string& table, const std::string& name) {
    std::vector<std::string> out;
    for (const spl::Quadcode c : store_.snapshot()->entity_codes(table, name)) out.push_back(c.text());
    return out;
  }

  std::vector<std::string> tables() { return store_.snapshot()->table_names(); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  spl::SnapshotStore store_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quadtree spatial relational database";

  static py::exception<spl::Error> sql_error(m, "SqlError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const spl::Error& e) {
      py::object pos = py::none();
      if (e.position()) pos = py::make_tuple(e.position()->line, e.position()->column);
      py::object exc = py::reinterpret_borrow<py::object>(sql_error.ptr())(py::str(e.what()));
      exc.attr("sqlstate") = e.state();
      exc.attr("position") = pos;
      PyErr_SetObject(sql_error.ptr(), exc.ptr());
    }
  });

  m.attr("MAX_LEVEL") = spl::Quadcode::kMaxLevel;

  m.def("encode_cell", [](std::uint32_t x, std::uint32_t y, int level) { return spl::encode_cell(x, y, level).text(); },
        py::arg("x"), py::arg("y"), py::arg("level"));
  m.def("decode_cell", [](const std::string& code) {
    const spl::GridCell g = spl::decode_cell(spl::Quadcode::parse_text(code));
    return py::make_tuple(g.x, g.y, g.level);
  });
  m.def("cell_rect", [](const std::string& code) {
    const spl::Rect r = spl::cell_rect(spl::Quadcode::parse_text(code));
    return py::make_tuple(r.x0, r.y0, r.x1, r.y1);
  });
  m.def("neighbor", [](const std::string& code, const std::string& dir) {
    return opt_text(spl::neighbor(spl::Quadcode::parse_text(code), direction(dir)));
  });
  m.def("parent", [](const std::string& code) { return spl::parent_of(spl::Quadcode::parse_text(code)).text(); });
  m.def("contains", [](const std::string& a, const std::string& b) {
    return spl::contains(spl::Quadcode::parse_text(a), spl::Quadcode::parse_text(b));
  });
  m.def("normalize", [](const std::vector<std::string>& codes) {
    return code_texts(spl::CodeSet::normalize(parse_codes(codes)));
  });
  m.def("union", [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return code_texts(spl::set_union(spl::CodeSet::normalize(parse_codes(a)), spl::CodeSet::normalize(parse_codes(b))));
  });
  m.def("intersect", [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return code_texts(spl::set_intersect(spl::CodeSet::normalize(parse_codes(a)), spl::CodeSet::normalize(parse_codes(b))));
  });
  m.def("difference", [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return code_texts(spl::set_difference(spl::CodeSet::normalize(parse_codes(a)), spl::CodeSet::normalize(parse_codes(b))));
  });
  m.def("encode", [](const py::dict& entity, int level) {
    const spl::EntityRequest req = spl::entity_from_json(from_py(entity));
    std::vector<std::string> out;
    for (const spl::Quadcode c : spl::encode_entity(spl::WorldTransform(), req.entity, level)) out.push_back(c.text());
    return out;
  }, py::arg("entity"), py::arg("level"));
  m.def("format_statement", [](const std::string& text) {
    std::string out;
    for (const auto& s : spl::sql::parse_script(text)) out += spl::sql::print(s) + "\n";
    return out;
  });

  py::class_<Db>(m, "Database")
      .def(py::init<const std::string&>(), py::arg("path"))
      .def("query", &Db::query, py::arg("sql"), py::arg("bindings") = py::dict())
      .def("execute", &Db::execute, py::arg("script"))
      .def("store_entity", &Db::store_entity, py::arg("entity"))
      .def("entity_codes", &Db::entity_codes, py::arg("table"), py::arg("name"))
      .def("tables", &Db::tables)
      .def_property_readonly("path", &Db::path);
}
