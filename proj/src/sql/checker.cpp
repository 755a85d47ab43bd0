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

#include "spl/sql/checker.hpp"

#include <set>

#include "spl/qt_functions.hpp"

namespace spl::sql {

namespace {

[[noreturn]] void fail(std::string_view state, const std::string& msg, const Span& span) {
  throw Error(state, msg, span.begin);
}

std::string kind_name(Kind k) { return std::string(to_string(k)); }

bool fits(Kind have, Kind want) { return have == Kind::Null || want == Kind::Null || have == want; }

void require(Kind have, Kind want, const Expr& at, const char* what) {
  if (!fits(have, want)) {
    fail(sqlstate::kDatatypeMismatch, std::string(what) + " must be " + kind_name(want) + ", got " + kind_name(have),
         at.span);
  }
}

Schema from_schema(const Select& s, const Database& db, const ParamKinds& params);

Schema source_schema(const FromItem& item, const Database& db, const ParamKinds& params) {
  if (const auto* t = std::get_if<TableRef>(&item.source)) {
    if (!db.has_table(t->name)) fail(sqlstate::kUndefinedTable, "unknown table '" + t->name + "'", item.span);
    return db.table(t->name).schema();
  }
  return check_query(*std::get<Box<Query>>(item.source), db, params);
}

Schema from_schema(const Select& s, const Database& db, const ParamKinds& params) {
  Schema out = source_schema(s.from.front(), db, params);
  for (std::size_t i = 1; i < s.from.size(); ++i) out = concat_schemas(out, source_schema(s.from[i], db, params));
  return out;
}

}  // namespace

Kind param_check_kind(const TypeName& type) { return type.kind == Kind::Number ? Kind::Number : Kind::Null; }

Kind check_expr(const Expr& expr, const Schema& scope, const ParamKinds& params) {
  if (const auto* l = std::get_if<Literal>(&expr.node)) return l->value.kind();
  if (const auto* c = std::get_if<ColumnRef>(&expr.node)) {
    const auto idx = scope.find(c->name);
    if (!idx) {
      fail(sqlstate::kUndefinedColumn,
           scope.size() == 0 ? "column reference '" + c->name + "' is not allowed here"
                             : "unknown column '" + c->name + "'",
           expr.span);
    }
    return scope[*idx].kind;
  }
  if (const auto* h = std::get_if<HostParam>(&expr.node)) {
    const auto it = params.find(h->name);
    if (it == params.end()) fail(sqlstate::kUndefinedParameter, "parameter :" + h->name + " is not bound", expr.span);
    return it->second;
  }
  if (const auto* u = std::get_if<Unary>(&expr.node)) {
    const Kind k = check_expr(*u->operand, scope, params);
    if (u->op == UnaryOp::Not) {
      require(k, Kind::Bool, *u->operand, "operand of NOT");
      return Kind::Bool;
    }
    require(k, Kind::Number, *u->operand, "operand of unary -");
    return Kind::Number;
  }
  if (const auto* b = std::get_if<Binary>(&expr.node)) {
    const Kind l = check_expr(*b->lhs, scope, params);
    const Kind r = check_expr(*b->rhs, scope, params);
    switch (b->op) {
      case BinaryOp::And:
      case BinaryOp::Or:
        require(l, Kind::Bool, *b->lhs, "operand of AND/OR");
        require(r, Kind::Bool, *b->rhs, "operand of AND/OR");
        return Kind::Bool;
      case BinaryOp::Add:
      case BinaryOp::Sub:
      case BinaryOp::Mul:
      case BinaryOp::Div:
        require(l, Kind::Number, *b->lhs, "arithmetic operand");
        require(r, Kind::Number, *b->rhs, "arithmetic operand");
        return Kind::Number;
      default:
        if (!fits(l, r)) {
          fail(sqlstate::kDatatypeMismatch, "cannot compare " + kind_name(l) + " with " + kind_name(r), expr.span);
        }
        return Kind::Bool;
    }
  }
  const auto& f = std::get<FuncCall>(expr.node);
  const FunctionSig* sig = find_function(f.name);
  if (!sig) fail(sqlstate::kUndefinedRoutine, "unknown function " + f.name, expr.span);
  if (f.args.size() != sig->params.size()) {
    fail(sqlstate::kWrongArity,
         f.name + " takes " + std::to_string(sig->params.size()) + " argument(s), got " + std::to_string(f.args.size()),
         expr.span);
  }
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    const Kind k = check_expr(f.args[i], scope, params);
    require(k, sig->params[i], f.args[i], (f.name + " argument " + std::to_string(i + 1)).c_str());
  }
  return sig->result;
}

Schema check_query(const Query& query, const Database& db, const ParamKinds& params) {
  if (const auto* t = std::get_if<TableRef>(&query.node)) {
    if (!db.has_table(t->name)) fail(sqlstate::kUndefinedTable, "unknown table '" + t->name + "'", query.span);
    return db.table(t->name).schema();
  }
  if (const auto* s = std::get_if<SetOp>(&query.node)) {
    const Schema l = check_query(*s->lhs, db, params);
    const Schema r = check_query(*s->rhs, db, params);
    if (!l.compatible_with(r)) {
      fail(sqlstate::kDatatypeMismatch,
           std::string(to_string(s->op)) + " operands have incompatible columns (" + std::to_string(l.size()) +
               " vs " + std::to_string(r.size()) + " columns, or differing kinds)",
           s->rhs->span);
    }
    return l;
  }
  const auto& sel = std::get<Select>(query.node);
  const Schema scope = from_schema(sel, db, params);
  if (sel.where) {
    const Kind k = check_expr(*sel.where, scope, params);
    require(k, Kind::Bool, *sel.where, "WHERE condition");
  }
  if (sel.columns.empty()) return scope;
  std::vector<Column> cols;
  std::set<std::string, ILess> seen;
  for (const SelectColumn& c : sel.columns) {
    const auto idx = scope.find(c.name);
    if (!idx) fail(sqlstate::kUndefinedColumn, "unknown column '" + c.name + "'", c.span);
    if (!seen.insert(scope[*idx].name).second) {
      fail(sqlstate::kDuplicateColumn, "column '" + c.name + "' selected twice", c.span);
    }
    cols.push_back(scope[*idx]);
  }
  return Schema(std::move(cols));
}

std::optional<Schema> check(const Statement& statement, const Database& db, const ParamKinds& params) {
  if (const auto* q = std::get_if<Query>(&statement.node)) return check_query(*q, db, params);
  if (const auto* c = std::get_if<CreateTable>(&statement.node)) {
    if (db.has_table(c->name)) fail(sqlstate::kDuplicateTable, "table '" + c->name + "' already exists", statement.span);
    std::set<std::string, ILess> seen;
    for (const ColumnDef& d : c->columns) {
      if (!seen.insert(d.name).second) fail(sqlstate::kDuplicateColumn, "duplicate column '" + d.name + "'", d.span);
    }
    return std::nullopt;
  }
  if (const auto* ins = std::get_if<Insert>(&statement.node)) {
    if (!db.has_table(ins->table)) {
      fail(sqlstate::kUndefinedTable, "unknown table '" + ins->table + "'", statement.span);
    }
    const Schema& schema = db.table(ins->table).schema();
    std::vector<Kind> targets;
    std::set<std::string, ILess> seen;
    for (const SelectColumn& c : ins->columns) {
      const auto idx = schema.find(c.name);
      if (!idx) fail(sqlstate::kUndefinedColumn, "unknown column '" + c.name + "' in " + ins->table, c.span);
      if (!seen.insert(c.name).second) fail(sqlstate::kDuplicateColumn, "column '" + c.name + "' listed twice", c.span);
      targets.push_back(schema[*idx].kind);
    }
    if (ins->columns.empty()) {
      for (const Column& c : schema.columns()) targets.push_back(c.kind);
    }
    for (const auto& row : ins->rows) {
      if (row.size() != targets.size()) {
        const Span at = row.empty() ? statement.span : row.front().span;
        fail(sqlstate::kWrongArity,
             "row has " + std::to_string(row.size()) + " value(s), expected " + std::to_string(targets.size()), at);
      }
      for (std::size_t i = 0; i < row.size(); ++i) {
        require(check_expr(row[i], Schema{}, params), targets[i], row[i], "inserted value");
      }
    }
    return std::nullopt;
  }
  if (const auto* p = std::get_if<ProcedureDecl>(&statement.node)) {
    if (db.has_procedure(p->name)) {
      fail(sqlstate::kDuplicateRoutine, "procedure '" + p->name + "' already exists", statement.span);
    }
    ParamKinds declared;
    for (const ParamDecl& d : p->params) {
      if (!declared.emplace(d.name, param_check_kind(d.type)).second) {
        fail(sqlstate::kDuplicateColumn, "parameter :" + d.name + " declared twice", d.span);
      }
    }
    check_query(p->body, db, declared);
    return std::nullopt;
  }
  const auto& call = std::get<Call>(statement.node);
  if (!db.has_procedure(call.name)) {
    fail(sqlstate::kUndefinedRoutine, "unknown procedure '" + call.name + "'", statement.span);
  }
  for (const Expr& a : call.args) check_expr(a, Schema{}, params);
  return std::nullopt;
}

}  // namespace spl::sql
