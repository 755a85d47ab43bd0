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

#include "spl/sql/parser.hpp"

#include <charconv>

#include "spl/text.hpp"

namespace spl::sql {

namespace {

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Keyword: return "keyword " + t.text;
    case TokenKind::String: return "string '" + t.text + "'";
    case TokenKind::Quadcode: return "quadcode Q'" + t.text + "'";
    case TokenKind::HostParam: return "parameter :" + t.text;
    case TokenKind::Punct: return "'" + t.text + "'";
    default: return std::string(to_string(t.kind)) + " '" + t.text + "'";
  }
}

bool is_set_op(const Token& t) {
  return t.kind == TokenKind::Keyword &&
         (t.text == "UNION" || t.text == "INTERSECT" || t.text == "MINUS" || t.text == "EXCEPT");
}

std::string canonical_column(std::string name) {
  // CODIGO is accepted as a spelling of CODE.
  if (iequals(name, "CODIGO")) return "CODE";
  return name;
}

}  // namespace

class ParserImpl {
 public:
  ParserImpl(const std::vector<Token>& toks, std::size_t& pos) : t_(toks), pos_(pos) {}

  Statement statement() {
    const Token& first = peek();
    Statement s{CreateTable{}, {}};
    if (is_kw("CREATE")) {
      s.node = create_table();
    } else if (is_kw("INSERT")) {
      s.node = insert();
    } else if (is_kw("PROCEDURE")) {
      s.node = procedure();
    } else if (is_kw("CALL")) {
      s.node = call();
    } else if (is_kw("SELECT") || is_punct("(") || peek().kind == TokenKind::Identifier) {
      s.node = query();
    } else {
      fail("CREATE, INSERT, PROCEDURE, CALL, SELECT, '(' or a table name");
    }
    s.span = {first.pos, prev_end()};
    if (!is_punct(";") && peek().kind != TokenKind::End) fail("';' or end of input");
    return s;
  }

  Query query(std::optional<Query> first = std::nullopt) {
    Query lhs = term(std::move(first));
    while (is_kw("UNION") || is_kw("MINUS") || is_kw("EXCEPT")) {
      const SetOpKind op = take().text == "UNION" ? SetOpKind::Union : SetOpKind::Minus;
      Query rhs = term();
      lhs = combine(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  std::vector<Token>::size_type& pos() { return pos_; }

 private:
  // ---- token helpers

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, t_.size() - 1);
    return t_[i];
  }
  const Token& take() {
    const Token& tok = t_[pos_];
    if (tok.kind != TokenKind::End) ++pos_;
    return tok;
  }
  SourcePos prev_end() const { return pos_ == 0 ? t_[0].pos : t_[pos_ - 1].end; }
  bool is_kw(std::string_view kw) const { return peek().kind == TokenKind::Keyword && peek().text == kw; }
  bool is_punct(std::string_view p) const { return peek().kind == TokenKind::Punct && peek().text == p; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& tok = peek();
    throw SyntaxError("expected " + expected + ", found " + describe(tok), tok.pos, tok.kind == TokenKind::End);
  }
  void expect_kw(std::string_view kw) {
    if (!is_kw(kw)) fail(std::string(kw));
    take();
  }
  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    take();
  }
  std::string identifier(const char* what) {
    if (peek().kind != TokenKind::Identifier) fail(what);
    return take().text;
  }

  struct DepthGuard {
    explicit DepthGuard(ParserImpl& p) : p_(p) {
      if (++p_.depth_ > Parser::kMaxDepth) {
        throw SyntaxError("nesting deeper than " + std::to_string(Parser::kMaxDepth) + " levels", p_.peek().pos,
                          false);
      }
    }
    ~DepthGuard() { --p_.depth_; }
    ParserImpl& p_;
  };

  // ---- statements

  TypeName type_name() {
    if (peek().kind != TokenKind::Identifier) fail("a type name (TEXT, CHAR, NUMBER or CODE)");
    const Token& tok = peek();
    TypeName ty;
    if (iequals(tok.text, "TEXT")) {
      ty.kind = Kind::Text;
    } else if (iequals(tok.text, "NUMBER")) {
      ty.kind = Kind::Number;
    } else if (iequals(tok.text, "CODE")) {
      ty.kind = Kind::Code;
    } else if (iequals(tok.text, "CHAR")) {
      ty.kind = Kind::Text;
      ty.is_char = true;
    } else {
      fail("a type name (TEXT, CHAR, NUMBER or CODE)");
    }
    take();
    if (ty.is_char && is_punct("(")) {
      take();
      const Token& n = peek();
      int len = 0;
      const auto [end, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), len);
      if (n.kind != TokenKind::Number || ec != std::errc() || end != n.text.data() + n.text.size() || len <= 0) {
        fail("a positive integer length");
      }
      take();
      ty.length = len;
      expect_punct(")");
    }
    return ty;
  }

  CreateTable create_table() {
    expect_kw("CREATE");
    expect_kw("TABLE");
    CreateTable ct;
    ct.name = identifier("a table name");
    expect_punct("(");
    do {
      ColumnDef c;
      c.span.begin = peek().pos;
      c.name = identifier("a column name");
      c.type = type_name();
      c.span.end = prev_end();
      ct.columns.push_back(std::move(c));
    } while (is_punct(",") && (take(), true));
    expect_punct(")");
    return ct;
  }

  std::vector<Expr> paren_exprs(bool allow_empty) {
    expect_punct("(");
    std::vector<Expr> out;
    if (allow_empty && is_punct(")")) {
      take();
      return out;
    }
    do {
      out.push_back(expr());
    } while (is_punct(",") && (take(), true));
    expect_punct(")");
    return out;
  }

  Insert insert() {
    expect_kw("INSERT");
    expect_kw("INTO");
    Insert ins;
    ins.table = identifier("a table name");
    if (is_punct("(")) {
      take();
      do {
        SelectColumn c;
        c.span.begin = peek().pos;
        c.name = canonical_column(identifier("a column name"));
        c.span.end = prev_end();
        ins.columns.push_back(std::move(c));
      } while (is_punct(",") && (take(), true));
      expect_punct(")");
    }
    expect_kw("VALUES");
    do {
      ins.rows.push_back(paren_exprs(false));
    } while (is_punct(",") && (take(), true));
    return ins;
  }

  ProcedureDecl procedure() {
    expect_kw("PROCEDURE");
    ProcedureDecl p{{}, {}, Query{TableRef{}, {}}};
    p.name = identifier("a procedure name");
    expect_punct("(");
    expect_kw("SQLSTATE");
    while (is_punct(",")) {
      take();
      ParamDecl d;
      d.span.begin = peek().pos;
      if (peek().kind != TokenKind::HostParam) fail("a parameter such as :name");
      d.name = take().text;
      d.type = type_name();
      d.span.end = prev_end();
      p.params.push_back(std::move(d));
    }
    expect_punct(")");
    if (is_punct(";")) take();
    if (!(is_kw("SELECT") || is_punct("(") || peek().kind == TokenKind::Identifier)) {
      fail("the procedure body (a query)");
    }
    p.body = query();
    return p;
  }

  Call call() {
    expect_kw("CALL");
    Call c;
    c.name = identifier("a procedure name");
    c.args = paren_exprs(true);
    return c;
  }

  // ---- queries

  static Query combine(SetOpKind op, Query lhs, Query rhs) {
    const Span span{lhs.span.begin, rhs.span.end};
    return Query{SetOp{op, std::move(lhs), std::move(rhs)}, span};
  }

  Query term(std::optional<Query> first = std::nullopt) {
    Query lhs = first ? std::move(*first) : primary();
    while (is_kw("INTERSECT")) {
      take();
      Query rhs = primary();
      lhs = combine(SetOpKind::Intersect, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Query primary() {
    DepthGuard guard(*this);
    const SourcePos begin = peek().pos;
    if (is_kw("SELECT")) return select();
    if (is_punct("(")) {
      take();
      Query q = query();
      expect_punct(")");
      q.span = {begin, prev_end()};
      return q;
    }
    if (peek().kind == TokenKind::Identifier) {
      std::string name = take().text;
      return Query{TableRef{std::move(name)}, {begin, prev_end()}};
    }
    fail("SELECT, '(' or a table name");
  }

  Query select() {
    const SourcePos begin = peek().pos;
    expect_kw("SELECT");
    Select s;
    if (is_punct("*")) {
      take();
    } else {
      do {
        SelectColumn c;
        c.span.begin = peek().pos;
        c.name = canonical_column(identifier("a column name or '*'"));
        c.span.end = prev_end();
        s.columns.push_back(std::move(c));
      } while (is_punct(",") && (take(), true));
    }
    expect_kw("FROM");
    for (;;) {
      FromItem item{TableRef{}, {peek().pos, {}}};
      if (is_punct("(")) {
        DepthGuard guard(*this);
        take();
        Query sub = query();
        expect_punct(")");
        if (is_set_op(peek())) {
          // A set operator right after a parenthesised FROM subquery
          // continues that subquery: FROM (A) MINUS B reads as FROM ((A) MINUS B).
          sub.span = {item.span.begin, prev_end()};
          sub = query(std::move(sub));
        }
        item.source = Box<Query>(std::move(sub));
      } else if (peek().kind == TokenKind::Identifier) {
        item.source = TableRef{take().text};
      } else {
        fail("a table name or '('");
      }
      item.span.end = prev_end();
      s.from.push_back(std::move(item));
      if (!is_punct(",")) break;
      take();
    }
    if (is_kw("WHERE")) {
      take();
      s.where = expr();
    }
    return Query{std::move(s), {begin, prev_end()}};
  }

  // ---- expressions

  Expr make(Expr::Storage node, SourcePos begin) { return Expr{std::move(node), {begin, prev_end()}}; }

 public:
  Expr expr() {
    DepthGuard guard(*this);
    return or_expr();
  }

 private:
  Expr binary_chain(Expr (ParserImpl::*next)(), std::initializer_list<std::pair<std::string_view, BinaryOp>> ops,
                    bool keyword) {
    const SourcePos begin = peek().pos;
    Expr lhs = (this->*next)();
    for (;;) {
      const BinaryOp* found = nullptr;
      for (const auto& [text, op] : ops) {
        const bool match = keyword ? is_kw(text) : is_punct(text);
        if (match) found = &op;
      }
      if (!found) return lhs;
      const BinaryOp op = *found;
      take();
      Expr rhs = (this->*next)();
      lhs = make(Binary{op, std::move(lhs), std::move(rhs)}, begin);
    }
  }

  Expr or_expr() { return binary_chain(&ParserImpl::and_expr, {{"OR", BinaryOp::Or}}, true); }
  Expr and_expr() { return binary_chain(&ParserImpl::not_expr, {{"AND", BinaryOp::And}}, true); }

  Expr not_expr() {
    if (is_kw("NOT")) {
      DepthGuard guard(*this);
      const SourcePos begin = take().pos;
      Expr operand = not_expr();
      return make(Unary{UnaryOp::Not, std::move(operand)}, begin);
    }
    return comparison();
  }

  Expr comparison() {
    static const std::pair<std::string_view, BinaryOp> kOps[] = {
        {"=", BinaryOp::Eq}, {"<>", BinaryOp::Ne}, {"!=", BinaryOp::Ne}, {"<", BinaryOp::Lt},
        {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge}};
    const SourcePos begin = peek().pos;
    Expr lhs = additive();
    for (const auto& [text, op] : kOps) {
      if (is_punct(text)) {
        take();
        Expr rhs = additive();
        return make(Binary{op, std::move(lhs), std::move(rhs)}, begin);
      }
    }
    return lhs;
  }

  Expr additive() {
    return binary_chain(&ParserImpl::multiplicative, {{"+", BinaryOp::Add}, {"-", BinaryOp::Sub}}, false);
  }
  Expr multiplicative() {
    return binary_chain(&ParserImpl::unary, {{"*", BinaryOp::Mul}, {"/", BinaryOp::Div}}, false);
  }

  Expr unary() {
    if (is_punct("-")) {
      DepthGuard guard(*this);
      const SourcePos begin = take().pos;
      Expr operand = unary();
      // Negative numeric literals are literals, not negations.
      if (auto* lit = std::get_if<Literal>(&operand.node); lit && lit->value.kind() == Kind::Number) {
        return make(Literal{Value::number(-lit->value.as_number())}, begin);
      }
      return make(Unary{UnaryOp::Neg, std::move(operand)}, begin);
    }
    return atom();
  }

  Expr atom() {
    const Token& tok = peek();
    const SourcePos begin = tok.pos;
    switch (tok.kind) {
      case TokenKind::Number: {
        const double d = parse_number(take().text);
        return make(Literal{Value::number(d)}, begin);
      }
      case TokenKind::String: return make(Literal{Value::text(take().text)}, begin);
      case TokenKind::Quadcode: return make(Literal{Value::code(Quadcode::parse(take().text))}, begin);
      case TokenKind::HostParam: return make(HostParam{take().text}, begin);
      case TokenKind::Keyword:
        if (tok.text == "TRUE" || tok.text == "FALSE") {
          const bool b = take().text == "TRUE";
          return make(Literal{Value::boolean(b)}, begin);
        }
        if (tok.text == "NULL") {
          take();
          return make(Literal{Value::null()}, begin);
        }
        break;
      case TokenKind::Identifier: {
        std::string name = take().text;
        if (is_punct("(")) {
          DepthGuard guard(*this);
          std::vector<Expr> args = paren_exprs(true);
          return make(FuncCall{to_upper(name), std::move(args)}, begin);
        }
        return make(ColumnRef{canonical_column(std::move(name))}, begin);
      }
      case TokenKind::Punct:
        if (tok.text == "(") {
          DepthGuard guard(*this);
          take();
          Expr inner = expr();
          expect_punct(")");
          inner.span = {begin, prev_end()};
          return inner;
        }
        break;
      default: break;
    }
    fail("an expression");
  }

  const std::vector<Token>& t_;
  std::size_t& pos_;
  int depth_ = 0;
};

Parser::Parser(std::string_view text) : tokens_(tokenize(text)) {}

bool Parser::done() {
  while (tokens_[pos_].kind == TokenKind::Punct && tokens_[pos_].text == ";") ++pos_;
  return tokens_[pos_].kind == TokenKind::End;
}

Statement Parser::next() {
  if (done()) {
    const Token& end = tokens_[pos_];
    throw SyntaxError("expected a statement, found end of input", end.pos, true);
  }
  ParserImpl impl(tokens_, pos_);
  Statement s = impl.statement();
  if (tokens_[pos_].kind == TokenKind::Punct && tokens_[pos_].text == ";") ++pos_;
  return s;
}

Statement parse_statement(std::string_view text) {
  Parser p(text);
  Statement s = p.next();
  if (!p.done()) {
    throw SyntaxError("expected a single statement", p.next().span.begin, false);
  }
  return s;
}

std::vector<Statement> parse_script(std::string_view text) {
  Parser p(text);
  std::vector<Statement> out;
  while (!p.done()) out.push_back(p.next());
  return out;
}

Query parse_query(std::string_view text) {
  Statement s = parse_statement(text);
  if (auto* q = std::get_if<Query>(&s.node)) return std::move(*q);
  throw SyntaxError("expected a query", s.span.begin, false);
}

bool is_incomplete(std::string_view text) {
  try {
    parse_script(text);
    return false;
  } catch (const SyntaxError& e) {
    return e.at_end();
  } catch (const Error& e) {
    return std::string_view(e.what()).starts_with("unterminated");
  }
}

}  // namespace spl::sql
