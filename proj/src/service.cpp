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

#include "spl/service.hpp"

#include <ostream>

#include "httplib.h"
#include "spl/geometry_io.hpp"
#include "spl/sql/parser.hpp"
#include "spl/storage.hpp"

namespace spl {

using nlohmann::json;

namespace {

int status_for(const Error& e) {
  if (e.state() == sqlstate::kIoError) return 500;
  return 400;
}

Service::Reply failure(const Error& e, int status) { return {status, error_json(e)}; }

Service::Reply failure(const Error& e) { return failure(e, status_for(e)); }

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw Error(sqlstate::kSyntaxError, std::string("request body is not valid JSON: ") + e.what());
  }
}

template <typename Fn>
Service::Reply guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return failure(e);
  } catch (const std::exception& e) {
    return failure(Error(sqlstate::kIoError, e.what()), 500);
  }
}

}  // namespace

json outcome_json(const sql::Outcome& outcome) {
  json out = {{"columns", json::array()}, {"kinds", json::array()}, {"rows", json::array()},
              {"sqlstate", outcome.sqlstate}, {"count", outcome.count},     {"message", outcome.message}};
  if (!outcome.relation) return out;
  for (const Column& c : outcome.relation->schema().columns()) {
    out["columns"].push_back(c.name);
    out["kinds"].push_back(to_string(c.kind));
  }
  for (const Row& r : outcome.relation->rows()) {
    json row = json::array();
    for (const Value& v : r) row.push_back(v.is_null() ? json(nullptr) : json(v.to_string()));
    out["rows"].push_back(std::move(row));
  }
  return out;
}

json error_json(const Error& error) {
  json out = {{"sqlstate", error.state()}, {"message", error.what()}};
  if (error.position()) out["position"] = {{"line", error.position()->line}, {"column", error.position()->column}};
  return out;
}

Value value_from_json(const json& j) {
  if (j.is_null()) return Value::null();
  if (j.is_boolean()) return Value::boolean(j.get<bool>());
  if (j.is_number()) return Value::number(j.get<double>());
  if (j.is_string()) return Value::text(j.get<std::string>());
  if (j.is_object() && j.size() == 1 && j.contains("code") && j["code"].is_string()) {
    return Value::code(Quadcode::parse_text(j["code"].get<std::string>()));
  }
  throw Error(sqlstate::kDatatypeMismatch, "unsupported binding value " + j.dump());
}

sql::Bindings bindings_from_json(const json& j) {
  sql::Bindings out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw Error(sqlstate::kDatatypeMismatch, "\"bindings\" must be an object");
  for (const auto& [name, value] : j.items()) {
    std::string key = name;
    if (!key.empty() && key.front() == ':') key.erase(0, 1);
    out[key] = value_from_json(value);
  }
  return out;
}

Service::Service(std::filesystem::path dir) : dir_(std::move(dir)), store_(open_or_create(dir_)) {
  persist_to(store_, dir_);
}

Service::Reply Service::query(const json& request) {
  return guarded([&] {
    if (!request.is_object() || !request.contains("sql") || !request["sql"].is_string()) {
      throw Error(sqlstate::kSyntaxError, "request needs a string \"sql\"");
    }
    const sql::Bindings b = bindings_from_json(request.value("bindings", json(nullptr)));
    const sql::Statement stmt = sql::parse_statement(request["sql"].get<std::string>());
    return Reply{200, outcome_json(sql::run(store_, stmt, b))};
  });
}

Service::Reply Service::store_entity(const json& request) {
  return guarded([&] {
    const EntityRequest req = entity_from_json(request);
    const StoreResult r = store_.write([&](Database& db) { return db.store_entity(req.entity, req.level); });
    json body = {{"stored_codes", r.stored}, {"table", r.table},
                 {"sqlstate", r.warning ? sqlstate::kWarning : sqlstate::kSuccess}};
    if (r.warning) body["warning"] = *r.warning;
    return Reply{200, body};
  });
}

Service::Reply Service::entity_cells(const std::string& table, const std::string& name) {
  return guarded([&] {
    const auto db = store_.snapshot();
    if (!db->has_table(table)) return failure(Error(sqlstate::kUndefinedTable, "unknown table '" + table + "'"), 404);
    const std::vector<Quadcode> codes = db->entity_codes(table, name);
    if (codes.empty()) {
      return failure(Error(sqlstate::kNoData, "no entity '" + name + "' in " + db->table_name(table)), 404);
    }
    return Reply{200, {{"codes", codes_json(codes)}, {"rects", rects_json(codes)}}};
  });
}

Service::Reply Service::encode(const json& request) {
  return guarded([&] {
    const EntityRequest req = entity_from_json(request);
    const auto db = store_.snapshot();
    const std::vector<Quadcode> codes =
        encode_entity(db->transform(), req.entity, req.level.value_or(db->default_level()));
    return Reply{200, {{"codes", codes_json(codes)}, {"rects", rects_json(codes)}}};
  });
}

Service::Reply Service::tables() {
  return guarded([&] {
    const auto db = store_.snapshot();
    json list = json::array();
    for (const std::string& name : db->table_names()) {
      const Relation& rel = db->table(name);
      json cols = json::array();
      for (const Column& c : rel.schema().columns()) cols.push_back({{"name", c.name}, {"kind", to_string(c.kind)}});
      list.push_back({{"name", name}, {"columns", cols}, {"rows", rel.size()}});
    }
    return Reply{200, {{"tables", list}}};
  });
}

Service::Reply Service::delete_entity(const std::string& table, const std::string& name) {
  return guarded([&] {
    if (!store_.snapshot()->has_table(table)) {
      return failure(Error(sqlstate::kUndefinedTable, "unknown table '" + table + "'"), 404);
    }
    const std::size_t n = store_.write([&](Database& db) { return db.delete_entity(table, name); });
    if (n == 0) return failure(Error(sqlstate::kNoData, "no entity '" + name + "' in " + table), 404);
    return Reply{200, {{"deleted", n}, {"sqlstate", sqlstate::kSuccess}}};
  });
}

void Service::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const Reply& reply) {
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json");
  };
  auto with_body = [send](auto handler) {
    return [send, handler](const httplib::Request& req, httplib::Response& res) {
      Reply reply;
      try {
        reply = handler(parse_body(req.body));
      } catch (const Error& e) {
        reply = failure(e);
      }
      send(res, reply);
    };
  };
  server.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Post("/query", with_body([this](const json& j) { return query(j); }));
  server.Post("/entities", with_body([this](const json& j) { return store_entity(j); }));
  server.Post("/encode", with_body([this](const json& j) { return encode(j); }));
  server.Get("/tables", [this, send](const httplib::Request&, httplib::Response& res) { send(res, tables()); });
  server.Get(R"(/entities/([^/]+)/([^/]+)/cells)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, entity_cells(req.matches[1], req.matches[2]));
  });
  server.Delete(R"(/entities/([^/]+)/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, delete_entity(req.matches[1], req.matches[2]));
  });
}

bool serve(const std::filesystem::path& dir, const std::string& host, int port, std::ostream& log) {
  Service service(dir);
  httplib::Server server;
  service.mount(server);
  if (!server.bind_to_port(host, port)) {
    log << "cannot bind " << host << ":" << port << "\n";
    return false;
  }
  log << "serving " << dir.string() << " on http://" << host << ":" << port << "\n" << std::flush;
  return server.listen_after_bind();
}

}  // namespace spl
