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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "spl/database.hpp"
#include "spl/sql/executor.hpp"

namespace httplib {
class Server;
}

namespace spl {

//! {"columns", "kinds", "rows", "sqlstate", "count", "message"}; row
//! values are strings, with JSON null for Null.
nlohmann::json outcome_json(const sql::Outcome& outcome);
//! {"sqlstate", "message", "position"?}.
nlohmann::json error_json(const Error& error);

//! JSON binding value: string, number, boolean, null, or {"code": "digits"}.
Value value_from_json(const nlohmann::json& j);
sql::Bindings bindings_from_json(const nlohmann::json& j);

//! Request handlers of the HTTP service, callable without a socket. Every
//! mutation is saved to the database directory before the reply is built;
//! a failed save leaves both disk and memory unchanged.
class Service {
 public:
  struct Reply {
    int status = 200;
    nlohmann::json body;
  };

  //! Opens (or creates) the database directory.
  explicit Service(std::filesystem::path dir);

  Reply query(const nlohmann::json& request);
  Reply store_entity(const nlohmann::json& request);
  Reply entity_cells(const std::string& table, const std::string& name);
  Reply encode(const nlohmann::json& request);
  Reply tables();
  Reply delete_entity(const std::string& table, const std::string& name);

  //! Registers all routes (with permissive CORS headers) on `server`.
  void mount(httplib::Server& server);

  SnapshotStore& store() noexcept { return store_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  SnapshotStore store_;
};

//! Serves until the process is stopped. Returns false when the port cannot
//! be bound.
bool serve(const std::filesystem::path& dir, const std::string& host, int port, std::ostream& log);

}  // namespace spl
