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

#include "spl/sql/printer.hpp"

namespace spl::sql {

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

constexpr int kNotPrec = 3;
constexpr int kComparePrec = 4;
constexpr int kAtomPrec = 8;

int expr_prec(const Expr& e) {
  if (const auto* b = std::get_if<Binary>(&e.node)) return precedence(b->op);
  if (const auto* u = std::get_if<Unary>(&e.node)) return u->op == UnaryOp::Not ? kNotPrec : kAtomPrec;
  return kAtomPrec;
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + print(e) + ")" : print(e); }

std::string joined(const std::vector<Expr>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + print(xs[i]);
  return out;
}

std::string operand(const Query& q) {
  if (const auto* t = std::get_if<TableRef>(&q.node)) return t->name;
  return "(" + print(q) + ")";
}

}  // namespace

std::string literal_text(const Value& v) {
  switch (v.kind()) {
    case Kind::Null: return "NULL";
    case Kind::Bool: return v.as_bool() ? "TRUE" : "FALSE";
    case Kind::Number: return format_number(v.as_number());
    case Kind::Code: return "Q'" + v.as_code().digits() + "'";
    case Kind::Text: {
      std::string out = "'";
      for (char c : v.as_text()) out += c == '\'' ? std::string("''") : std::string(1, c);
      return out + "'";
    }
  }
  return "NULL";
}

std::string print(const Expr& expr) {
  return std::visit(
      Overload{
          [](const Literal& l) { return literal_text(l.value); },
          [](const ColumnRef& c) { return c.name; },
          [](const HostParam& h) { return ":" + h.name; },
          [](const Unary& u) {
            if (u.op == UnaryOp::Neg) return "-(" + print(*u.operand) + ")";
            return "NOT " + wrap(*u.operand, expr_prec(*u.operand) < kNotPrec);
          },
          [](const Binary& b) {
            const int p = precedence(b.op);
            const int lp = expr_prec(*b.lhs);
            const int rp = expr_prec(*b.rhs);
            const bool lparen = lp < p || (p == kComparePrec && lp == kComparePrec);
            return wrap(*b.lhs, lparen) + " " + std::string(to_string(b.op)) + " " + wrap(*b.rhs, rp <= p);
          },
          [](const FuncCall& f) { return f.name + "(" + joined(f.args) + ")"; },
      },
      expr.node);
}

std::string print(const Query& query) {
  return std::visit(Overload{
                        [](const TableRef& t) { return t.name; },
                        [](const SetOp& s) {
                          return operand(*s.lhs) + " " + std::string(to_string(s.op)) + " " + operand(*s.rhs);
                        },
                        [](const Select& s) {
                          std::string out = "SELECT ";
                          if (s.columns.empty()) out += "*";
                          for (std::size_t i = 0; i < s.columns.size(); ++i) {
                            out += (i ? ", " : "") + s.columns[i].name;
                          }
                          out += " FROM ";
                          for (std::size_t i = 0; i < s.from.size(); ++i) {
                            if (i) out += ", ";
                            if (const auto* t = std::get_if<TableRef>(&s.from[i].source)) {
                              out += t->name;
                            } else {
                              out += "(" + print(*std::get<Box<Query>>(s.from[i].source)) + ")";
                            }
                          }
                          if (s.where) out += " WHERE " + print(*s.where);
                          return out;
                        },
                    },
                    query.node);
}

std::string print(const TypeName& type) {
  switch (type.kind) {
    case Kind::Number: return "NUMBER";
    case Kind::Code: return "CODE";
    default: break;
  }
  if (!type.is_char) return "TEXT";
  return type.length ? "CHAR(" + std::to_string(*type.length) + ")" : "CHAR";
}

std::string print(const Statement& statement) {
  return std::visit(
      Overload{
          [](const CreateTable& c) {
            std::string out = "CREATE TABLE " + c.name + " (";
            for (std::size_t i = 0; i < c.columns.size(); ++i) {
              out += (i ? ", " : "") + c.columns[i].name + " " + print(c.columns[i].type);
            }
            return out + ");";
          },
          [](const Insert& ins) {
            std::string out = "INSERT INTO " + ins.table;
            if (!ins.columns.empty()) {
              out += " (";
              for (std::size_t i = 0; i < ins.columns.size(); ++i) out += (i ? ", " : "") + ins.columns[i].name;
              out += ")";
            }
            out += " VALUES ";
            for (std::size_t i = 0; i < ins.rows.size(); ++i) out += (i ? ", (" : "(") + joined(ins.rows[i]) + ")";
            return out + ";";
          },
          [](const Query& q) { return print(q) + ";"; },
          [](const ProcedureDecl& p) {
            std::string out = "PROCEDURE " + p.name + " (SQLSTATE";
            for (const ParamDecl& d : p.params) out += ", :" + d.name + " " + print(d.type);
            return out + ");\n" + print(p.body) + ";";
          },
          [](const Call& c) { return "CALL " + c.name + "(" + joined(c.args) + ");"; },
      },
      statement.node);
}

}  // namespace spl::sql
