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

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spl/error.hpp"
#include "spl/value.hpp"

namespace spl::sql {

//! Source range of a node. Spans never take part in node equality.
struct Span {
  SourcePos begin;
  SourcePos end;
  friend bool operator==(const Span&, const Span&) { return true; }
};

//! Owning pointer with value semantics: copies deep, compares deep.
template <typename T>
class Box {
 public:
  Box(T value) : p_(std::make_unique<T>(std::move(value))) {}  // NOLINT: implicit by design
  Box(const Box& o) : p_(std::make_unique<T>(*o.p_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) {
    if (this != &o) p_ = std::make_unique<T>(*o.p_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T& operator*() { return *p_; }
  const T& operator*() const { return *p_; }
  T* operator->() { return p_.get(); }
  const T* operator->() const { return p_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.p_ == *b.p_; }

 private:
  std::unique_ptr<T> p_;
};

// ---- expressions

struct Expr;

struct Literal {
  Value value;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct ColumnRef {
  std::string name;
  friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

struct HostParam {
  std::string name;
  friend bool operator==(const HostParam&, const HostParam&) = default;
};

enum class UnaryOp { Not, Neg };

struct Unary {
  UnaryOp op;
  Box<Expr> operand;
  friend bool operator==(const Unary&, const Unary&) = default;
};

enum class BinaryOp { Or, And, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, Mul, Div };

std::string_view to_string(BinaryOp op) noexcept;
//! Higher binds tighter: OR 1, AND 2, comparisons 4, +- 5, */ 6 (NOT is 3).
int precedence(BinaryOp op) noexcept;

struct Binary {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const Binary&, const Binary&) = default;
};

struct FuncCall {
  std::string name;  // upper-cased
  std::vector<Expr> args;
  friend bool operator==(const FuncCall&, const FuncCall&) = default;
};

struct Expr {
  using Storage = std::variant<Literal, ColumnRef, HostParam, Unary, Binary, FuncCall>;
  Storage node;
  Span span;
  friend bool operator==(const Expr&, const Expr&) = default;
};

// ---- queries

struct Query;

struct TableRef {
  std::string name;
  friend bool operator==(const TableRef&, const TableRef&) = default;
};

struct FromItem {
  std::variant<TableRef, Box<Query>> source;
  Span span;
  friend bool operator==(const FromItem&, const FromItem&) = default;
};

struct SelectColumn {
  std::string name;
  Span span;
  friend bool operator==(const SelectColumn&, const SelectColumn&) = default;
};

struct Select {
  //! Empty means `*`.
  std::vector<SelectColumn> columns;
  std::vector<FromItem> from;
  std::optional<Expr> where;
  friend bool operator==(const Select&, const Select&) = default;
};

//! MINUS and EXCEPT are the same operator.
enum class SetOpKind { Union, Intersect, Minus };

std::string_view to_string(SetOpKind op) noexcept;

struct SetOp {
  SetOpKind op;
  Box<Query> lhs;
  Box<Query> rhs;
  friend bool operator==(const SetOp&, const SetOp&) = default;
};

struct Query {
  std::variant<Select, SetOp, TableRef> node;
  Span span;
  friend bool operator==(const Query&, const Query&) = default;
};

// ---- statements

//! Declared type: TEXT, CHAR(n), NUMBER or CODE. CHAR is TEXT with a
//! documentary length.
struct TypeName {
  Kind kind = Kind::Text;
  bool is_char = false;
  std::optional<int> length;
  friend bool operator==(const TypeName&, const TypeName&) = default;
};

struct ColumnDef {
  std::string name;
  TypeName type;
  Span span;
  friend bool operator==(const ColumnDef&, const ColumnDef&) = default;
};

struct CreateTable {
  std::string name;
  std::vector<ColumnDef> columns;
  friend bool operator==(const CreateTable&, const CreateTable&) = default;
};

struct Insert {
  std::string table;
  //! Empty means all columns in declared order.
  std::vector<SelectColumn> columns;
  std::vector<std::vector<Expr>> rows;
  friend bool operator==(const Insert&, const Insert&) = default;
};

struct ParamDecl {
  std::string name;
  TypeName type;
  Span span;
  friend bool operator==(const ParamDecl&, const ParamDecl&) = default;
};

struct ProcedureDecl {
  std::string name;
  std::vector<ParamDecl> params;
  Query body;
  friend bool operator==(const ProcedureDecl&, const ProcedureDecl&) = default;
};

struct Call {
  std::string name;
  std::vector<Expr> args;
  friend bool operator==(const Call&, const Call&) = default;
};

struct Statement {
  std::variant<CreateTable, Insert, Query, ProcedureDecl, Call> node;
  Span span;
  friend bool operator==(const Statement&, const Statement&) = default;
};

}  // namespace spl::sql
