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

#include "spl/sql/executor.hpp"

#include <memory>

#include "spl/qt_functions.hpp"
#include "spl/sql/checker.hpp"
#include "spl/sql/parser.hpp"
#include "spl/sql/printer.hpp"

namespace spl::sql {

namespace {

using RowFn = std::function<Value(const Row&)>;

ParamKinds kinds_of(const Bindings& bindings) {
  ParamKinds out;
  for (const auto& [name, value] : bindings) out.emplace(name, value.kind());
  return out;
}

bool truthy(const Value& v) { return v.kind() == Kind::Bool && v.as_bool(); }

Value compare(BinaryOp op, const Value& a, const Value& b) {
  // Any comparison involving Null is false.
  if (a.is_null() || b.is_null()) return Value::boolean(false);
  if (a.kind() != b.kind()) {
    throw Error(sqlstate::kDatatypeMismatch, "cannot compare " + std::string(to_string(a.kind())) + " with " +
                                                 std::string(to_string(b.kind())));
  }
  const auto c = a <=> b;
  switch (op) {
    case BinaryOp::Eq: return Value::boolean(c == 0);
    case BinaryOp::Ne: return Value::boolean(c != 0);
    case BinaryOp::Lt: return Value::boolean(c < 0);
    case BinaryOp::Le: return Value::boolean(c <= 0);
    case BinaryOp::Gt: return Value::boolean(c > 0);
    default: return Value::boolean(c >= 0);
  }
}

double number_of(const Value& v) {
  if (v.kind() != Kind::Number) {
    throw Error(sqlstate::kDatatypeMismatch, "arithmetic on " + std::string(to_string(v.kind())));
  }
  return v.as_number();
}

Value logic(BinaryOp op, const Value& a, const Value& b) {
  auto as3 = [](const Value& v) -> std::optional<bool> {
    if (v.is_null()) return std::nullopt;
    if (v.kind() != Kind::Bool) throw Error(sqlstate::kDatatypeMismatch, "AND/OR operand is not boolean");
    return v.as_bool();
  };
  const auto x = as3(a);
  const auto y = as3(b);
  const bool dominant = op == BinaryOp::Or;  // OR: true wins; AND: false wins
  if (x == dominant || y == dominant) return Value::boolean(dominant);
  if (!x || !y) return Value::null();
  return Value::boolean(!dominant);
}

//! Turns an expression into a row function with columns and parameters
//! resolved once.
RowFn compile(const Expr& expr, const Schema& scope, const Bindings& bindings) {
  if (const auto* l = std::get_if<Literal>(&expr.node)) {
    return [v = l->value](const Row&) { return v; };
  }
  if (const auto* c = std::get_if<ColumnRef>(&expr.node)) {
    const auto idx = scope.find(c->name);
    if (!idx) throw Error(sqlstate::kUndefinedColumn, "unknown column '" + c->name + "'", expr.span.begin);
    return [i = *idx](const Row& r) { return r[i]; };
  }
  if (const auto* h = std::get_if<HostParam>(&expr.node)) {
    const auto it = bindings.find(h->name);
    if (it == bindings.end()) {
      throw Error(sqlstate::kUndefinedParameter, "parameter :" + h->name + " is not bound", expr.span.begin);
    }
    return [v = it->second](const Row&) { return v; };
  }
  if (const auto* u = std::get_if<Unary>(&expr.node)) {
    RowFn inner = compile(*u->operand, scope, bindings);
    if (u->op == UnaryOp::Not) {
      return [inner](const Row& r) {
        const Value v = inner(r);
        if (v.is_null()) return v;
        if (v.kind() != Kind::Bool) throw Error(sqlstate::kDatatypeMismatch, "NOT operand is not boolean");
        return Value::boolean(!v.as_bool());
      };
    }
    return [inner](const Row& r) {
      const Value v = inner(r);
      return v.is_null() ? v : Value::number(-number_of(v));
    };
  }
  if (const auto* b = std::get_if<Binary>(&expr.node)) {
    RowFn lhs = compile(*b->lhs, scope, bindings);
    RowFn rhs = compile(*b->rhs, scope, bindings);
    const BinaryOp op = b->op;
    switch (op) {
      case BinaryOp::And:
      case BinaryOp::Or: return [=](const Row& r) { return logic(op, lhs(r), rhs(r)); };
      case BinaryOp::Add:
      case BinaryOp::Sub:
      case BinaryOp::Mul:
      case BinaryOp::Div:
        return [=](const Row& r) {
          const Value x = lhs(r);
          const Value y = rhs(r);
          if (x.is_null() || y.is_null()) return Value::null();
          const double p = number_of(x);
          const double q = number_of(y);
          switch (op) {
            case BinaryOp::Add: return Value::number(p + q);
            case BinaryOp::Sub: return Value::number(p - q);
            case BinaryOp::Mul: return Value::number(p * q);
            default:
              if (q == 0) throw Error(sqlstate::kDivisionByZero, "division by zero");
              return Value::number(p / q);
          }
        };
      default: return [=](const Row& r) { return compare(op, lhs(r), rhs(r)); };
    }
  }
  const auto& f = std::get<FuncCall>(expr.node);
  const FunctionSig* sig = find_function(f.name);
  if (!sig) throw Error(sqlstate::kUndefinedRoutine, "unknown function " + f.name, expr.span.begin);
  std::vector<RowFn> args;
  for (const Expr& a : f.args) args.push_back(compile(a, scope, bindings));
  return [sig, args](const Row& r) {
    std::vector<Value> vals;
    vals.reserve(args.size());
    for (const RowFn& a : args) vals.push_back(a(r));
    return call_function(*sig, vals);
  };
}

Value constant(const Expr& expr, const Bindings& bindings) { return compile(expr, Schema{}, bindings)(Row{}); }

using RelPtr = std::shared_ptr<const Relation>;

RelPtr eval(const Query& query, const Database& db, const Bindings& bindings);

RelPtr eval_source(const FromItem& item, const Database& db, const Bindings& bindings) {
  if (const auto* t = std::get_if<TableRef>(&item.source)) return db.table_ptr(t->name);
  return eval(*std::get<Box<Query>>(item.source), db, bindings);
}

RelPtr eval_select(const Select& sel, const Database& db, const Bindings& bindings) {
  RelPtr base = eval_source(sel.from.front(), db, bindings);
  for (std::size_t i = 1; i < sel.from.size(); ++i) {
    base = std::make_shared<const Relation>(cross_product(*base, *eval_source(sel.from[i], db, bindings)));
  }
  if (sel.columns.empty() && !sel.where) return base;

  const Schema& scope = base->schema();
  std::vector<std::size_t> keep;
  std::vector<Column> cols;
  for (const SelectColumn& c : sel.columns) {
    const auto idx = scope.find(c.name);
    if (!idx) throw Error(sqlstate::kUndefinedColumn, "unknown column '" + c.name + "'", c.span.begin);
    keep.push_back(*idx);
    cols.push_back(scope[*idx]);
  }
  const bool all = keep.empty();
  auto out = std::make_shared<Relation>(all ? scope : Schema(std::move(cols)));
  const RowFn where = sel.where ? compile(*sel.where, scope, bindings) : RowFn{};
  for (const Row& r : base->rows()) {
    if (where && !truthy(where(r))) continue;
    if (all) {
      out->insert(r);
    } else {
      Row projected;
      projected.reserve(keep.size());
      for (std::size_t i : keep) projected.push_back(r[i]);
      out->insert(std::move(projected));
    }
  }
  return out;
}

RelPtr eval(const Query& query, const Database& db, const Bindings& bindings) {
  if (const auto* t = std::get_if<TableRef>(&query.node)) return db.table_ptr(t->name);
  if (const auto* s = std::get_if<SetOp>(&query.node)) {
    const RelPtr l = eval(*s->lhs, db, bindings);
    const RelPtr r = eval(*s->rhs, db, bindings);
    switch (s->op) {
      case SetOpKind::Union: return std::make_shared<const Relation>(rel_union(*l, *r));
      case SetOpKind::Intersect: return std::make_shared<const Relation>(rel_intersect(*l, *r));
      case SetOpKind::Minus: return std::make_shared<const Relation>(rel_minus(*l, *r));
    }
  }
  return eval_select(std::get<Select>(query.node), db, bindings);
}

Outcome rows_outcome(Relation rel) {
  Outcome o;
  o.type = Outcome::Type::Rows;
  o.sqlstate = std::string(rel.empty() ? sqlstate::kNoData : sqlstate::kSuccess);
  o.count = rel.size();
  o.message = "SELECT " + std::to_string(rel.size());
  o.relation = std::move(rel);
  return o;
}

Outcome run_call(const Call& call, const Database& db, const Bindings& bindings) {
  std::vector<Value> args;
  for (const Expr& a : call.args) args.push_back(constant(a, bindings));
  return call_procedure(db, call.name, args);
}

}  // namespace

bool is_read_only(const Statement& statement) {
  return std::holds_alternative<Query>(statement.node) || std::holds_alternative<Call>(statement.node);
}

Relation evaluate_query(const Query& query, const Database& db, const Bindings& bindings) {
  return *eval(query, db, bindings);
}

Outcome call_procedure(const Database& db, std::string_view name, const std::vector<Value>& args) {
  const Statement decl_stmt = parse_statement(db.procedure_text(name));
  const auto& decl = std::get<ProcedureDecl>(decl_stmt.node);
  if (args.size() != decl.params.size()) {
    throw Error(sqlstate::kWrongArity, "procedure " + decl.name + " takes " + std::to_string(decl.params.size()) +
                                           " argument(s), got " + std::to_string(args.size()));
  }
  Bindings bound;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const ParamDecl& p = decl.params[i];
    const Kind k = args[i].kind();
    const bool ok = k == Kind::Null ||
                    (p.type.kind == Kind::Number ? k == Kind::Number : (k == Kind::Text || k == Kind::Code));
    if (!ok) {
      throw Error(sqlstate::kDatatypeMismatch, "argument " + std::to_string(i + 1) + " (:" + p.name + " " +
                                                   print(p.type) + ") cannot take a " +
                                                   std::string(to_string(k)) + " value");
    }
    bound.emplace(p.name, args[i]);
  }
  // Re-check with the actual argument kinds so a mismatch is reported
  // whether or not any row would reach the comparison.
  check_query(decl.body, db, kinds_of(bound));
  Outcome o = rows_outcome(evaluate_query(decl.body, db, bound));
  o.message = "CALL " + decl.name;
  return o;
}

Outcome execute_read(const Statement& statement, const Database& db, const Bindings& bindings) {
  if (!is_read_only(statement)) {
    throw Error(sqlstate::kSyntaxError, "statement modifies the database", statement.span.begin);
  }
  check(statement, db, kinds_of(bindings));
  if (const auto* q = std::get_if<Query>(&statement.node)) return rows_outcome(evaluate_query(*q, db, bindings));
  return run_call(std::get<Call>(statement.node), db, bindings);
}

Outcome execute(const Statement& statement, Database& db, const Bindings& bindings) {
  if (is_read_only(statement)) return execute_read(statement, db, bindings);
  check(statement, db, kinds_of(bindings));
  Outcome o;
  if (const auto* c = std::get_if<CreateTable>(&statement.node)) {
    std::vector<Column> cols;
    for (const ColumnDef& d : c->columns) cols.push_back(Column{d.name, d.type.kind});
    db.create_table(c->name, Schema(std::move(cols)));
    o.message = "CREATE TABLE " + c->name;
    return o;
  }
  if (const auto* p = std::get_if<ProcedureDecl>(&statement.node)) {
    db.define_procedure(p->name, print(statement));
    o.message = "PROCEDURE " + p->name;
    return o;
  }
  const auto& ins = std::get<Insert>(statement.node);
  const Schema& schema = db.table(ins.table).schema();
  std::vector<std::size_t> targets;
  for (const SelectColumn& c : ins.columns) targets.push_back(*schema.find(c.name));
  if (ins.columns.empty()) {
    for (std::size_t i = 0; i < schema.size(); ++i) targets.push_back(i);
  }
  std::vector<Row> rows;
  for (const auto& exprs : ins.rows) {
    Row r(schema.size());
    for (std::size_t i = 0; i < exprs.size(); ++i) r[targets[i]] = constant(exprs[i], bindings);
    rows.push_back(std::move(r));
  }
  o.type = Outcome::Type::Count;
  o.count = db.insert_rows(ins.table, std::move(rows));
  o.message = "INSERT " + std::to_string(o.count);
  return o;
}

Outcome run(SnapshotStore& store, const Statement& statement, const Bindings& bindings) {
  if (is_read_only(statement)) return execute_read(statement, *store.snapshot(), bindings);
  return store.write([&](Database& db) { return execute(statement, db, bindings); });
}

void run_script(SnapshotStore& store, std::string_view text,
                const std::function<void(const Statement&, const Outcome&)>& sink) {
  Parser parser(text);
  while (!parser.done()) {
    const Statement s = parser.next();
    const Outcome o = run(store, s);
    if (sink) sink(s, o);
  }
}

}  // namespace spl::sql
