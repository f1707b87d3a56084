//  Copyright 2026 The fpop Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include "fpop/parser.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace fpop {

namespace ast {
std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Eq: return "=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}
}  // namespace ast

std::string format_diagnostic(std::string_view file, const Diagnostic& d) {
  std::string out(file);
  out += ':' + std::to_string(d.pos.line) + ':' + std::to_string(d.pos.col) + ": ";
  out += d.severity == Severity::Error ? "error: " : "warning: ";
  out += d.message;
  return out;
}

std::vector<std::string> effective_shape(const ast::RelationDecl& decl) {
  if (!decl.shape.empty()) return decl.shape;
  return std::vector<std::string>(decl.args.size(), "_");
}

namespace {

using ast::Expr;

bool is_keyword_start(const Token& t) {
  static const std::set<std::string, std::less<>> kw = {"type", "lattice", "relation", "rel", "rule",
                                                         "order", "ord", "query", "const"};
  return t.kind == TokenKind::Ident && kw.contains(t.text);
}

bool term_start(TokenKind k) {
  switch (k) {
    case TokenKind::Ident:
    case TokenKind::Int:
    case TokenKind::String:
    case TokenKind::Underscore:
    case TokenKind::LParen:
    case TokenKind::LBrace:
      return true;
    default:
      return false;
  }
}

class Parser {
 public:
  Parser(std::span<const Token> tokens, std::set<std::string> relations)
      : toks_(tokens), relations_(std::move(relations)) {}

  ast::Program parse_all(std::vector<Diagnostic>& diags) {
    ast::Program prog;
    while (!at(TokenKind::Eof)) {
      if (at(TokenKind::Newline)) {
        ++i_;
        continue;
      }
      try {
        prog.decls.push_back(declaration());
        if (!at(TokenKind::Eof)) expect(TokenKind::Newline, "end of declaration");
      } catch (const ParseError& e) {
        diags.push_back({e.pos(), Severity::Error, e.what()});
        while (!at(TokenKind::Newline) && !at(TokenKind::Eof)) ++i_;
      }
    }
    return prog;
  }

  ast::Atom atom() {
    const Token& name = expect(TokenKind::Ident, "relation name");
    ast::Atom a;
    a.relation = name.text;
    a.pos = name.pos;
    while (true) {
      if (term_start(peek().kind)) {
        a.args.push_back(expr());
        a.shape.emplace_back("_");
      } else if (at(TokenKind::Eq) || at(TokenKind::Le)) {
        a.shape.push_back(peek().text);
        ++i_;
      } else {
        break;
      }
    }
    return a;
  }

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at(TokenKind k) const { return peek().kind == k; }

 private:
  bool at_word(std::string_view w) const { return at(TokenKind::Ident) && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

  const Token& expect(TokenKind k, std::string_view what) {
    if (!at(k)) {
      fail("expected " + std::string(what) + ", found " + describe(peek()));
    }
    return toks_[i_++];
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail("expected '" + std::string(w) + "', found " + describe(peek()));
    ++i_;
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::Ident || t.kind == TokenKind::Int) return "'" + t.text + "'";
    return std::string(to_string(t.kind));
  }

  ast::Decl declaration() {
    const Token& kw = peek();
    if (!is_keyword_start(kw)) fail("expected a declaration, found " + describe(kw));
    ++i_;
    if (kw.text == "type") {
      ast::TypeDecl d;
      d.pos = kw.pos;
      d.name = expect(TokenKind::Ident, "type name").text;
      if (at(TokenKind::Eq)) {
        ++i_;
        d.alias = type_expr();
      }
      return d;
    }
    if (kw.text == "lattice") {
      ast::LatticeDecl d;
      d.pos = kw.pos;
      d.name = expect(TokenKind::Ident, "lattice name").text;
      expect(TokenKind::Eq, "'='");
      d.expr = type_expr();
      return d;
    }
    if (kw.text == "relation" || kw.text == "rel") return relation_decl(kw.pos);
    if (kw.text == "const") {
      ast::ConstDecl d;
      d.pos = kw.pos;
      d.name = expect(TokenKind::Ident, "constant name").text;
      expect(TokenKind::Colon, "':'");
      d.type = type_expr();
      return d;
    }
    if (kw.text == "rule") return rule_decl(kw.pos);
    if (kw.text == "order" || kw.text == "ord") return order_decl(kw.pos);
    ast::QueryDecl q;
    q.pos = kw.pos;
    q.name = expect(TokenKind::Ident, "query name").text;
    expect(TokenKind::Colon, "':'");
    q.pattern = atom();
    return q;
  }

  ast::TypeExpr type_expr() {
    const Token& name = expect(TokenKind::Ident, "type or lattice name");
    ast::TypeExpr t{name.text, {}, name.pos};
    if (at(TokenKind::LParen)) {
      ++i_;
      t.params.push_back(type_expr());
      while (at(TokenKind::Comma)) {
        ++i_;
        t.params.push_back(type_expr());
      }
      expect(TokenKind::RParen, "')'");
    }
    return t;
  }

  ast::RelationDecl relation_decl(SourcePos pos) {
    ast::RelationDecl d;
    d.pos = pos;
    d.name = expect(TokenKind::Ident, "relation name").text;
    while (!at(TokenKind::Colon)) {
      if (at(TokenKind::Underscore)) {
        d.shape.emplace_back("_");
      } else if (at(TokenKind::Eq) || at(TokenKind::Le)) {
        d.shape.push_back(peek().text);
      } else {
        fail("malformed template: only '_', '=' and '<=' may follow the relation name, found " +
             describe(peek()));
      }
      ++i_;
    }
    ++i_;
    d.args.push_back(type_expr());
    while (at(TokenKind::Comma)) {
      ++i_;
      d.args.push_back(type_expr());
    }
    if (!d.shape.empty()) {
      auto holes = std::count(d.shape.begin(), d.shape.end(), "_");
      if (static_cast<std::size_t>(holes) != d.args.size()) {
        throw ParseError(pos, "malformed template: " + std::to_string(holes) + " placeholders for " +
                                  std::to_string(d.args.size()) + " argument types");
      }
      if (d.shape.front() != "_") {
        throw ParseError(pos, "malformed template: must start with a placeholder");
      }
    }
    return d;
  }

  ast::RuleDecl rule_decl(SourcePos pos) {
    ast::RuleDecl r;
    r.pos = pos;
    if (at(TokenKind::Ident)) r.name = toks_[i_++].text;
    expect(TokenKind::Colon, "':'");
    std::vector<ast::Premise> items;
    if (!at(TokenKind::Arrow)) {
      items.push_back(premise());
      while (at(TokenKind::Comma)) {
        ++i_;
        items.push_back(premise());
      }
    }
    if (at(TokenKind::Arrow)) {
      ++i_;
      r.body = std::move(items);
      r.heads.push_back(head_atom());
      while (at(TokenKind::Comma)) {
        ++i_;
        r.heads.push_back(head_atom());
      }
    } else {
      for (auto& item : items) {
        auto* a = std::get_if<ast::Atom>(&item);
        if (!a) throw ParseError(pos, "rule without '-->' must list only head atoms");
        r.heads.push_back(std::move(*a));
      }
    }
    if (r.heads.empty()) fail("rule has no head");
    return r;
  }

  ast::Atom head_atom() {
    if (!at(TokenKind::Ident)) fail("expected a head atom, found " + describe(peek()));
    return atom();
  }

  ast::Premise premise() {
    if (at_word("forall")) {
      ast::Forall f;
      f.pos = peek().pos;
      ++i_;
      f.var = expect(TokenKind::Ident, "bound variable").text;
      expect_word("in");
      f.collection = expr();
      expect(TokenKind::Dot, "'.'");
      f.inner = atom();
      return f;
    }
    if (at(TokenKind::Ident) &&
        (relations_.contains(peek().text) ||
         (term_start(peek(1).kind) && peek().text != "inf" && peek().text != "true" &&
          peek().text != "false"))) {
      return atom();
    }
    ast::Constraint c;
    c.pos = peek().pos;
    c.lhs = expr();
    switch (peek().kind) {
      case TokenKind::Le: c.op = ast::CmpOp::Le; break;
      case TokenKind::Lt: c.op = ast::CmpOp::Lt; break;
      case TokenKind::Eq: c.op = ast::CmpOp::Eq; break;
      case TokenKind::Ge: c.op = ast::CmpOp::Ge; break;
      case TokenKind::Gt: c.op = ast::CmpOp::Gt; break;
      default: fail("expected a comparison operator, found " + describe(peek()));
    }
    ++i_;
    c.rhs = expr();
    return c;
  }

  Expr expr() {
    Expr e = primary();
    while (at(TokenKind::Plus)) {
      ++i_;
      e = Expr::add(std::move(e), primary());
    }
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Ident: {
        ++i_;
        if (t.text == "inf") return {Expr::Kind::InfLit, t.pos, "", 0, false, {}};
        if (t.text == "true" || t.text == "false") {
          return {Expr::Kind::BoolLit, t.pos, "", 0, t.text == "true", {}};
        }
        return Expr::name(t.text, t.pos);
      }
      case TokenKind::Underscore: ++i_; return Expr::wildcard(t.pos);
      case TokenKind::Int: ++i_; return Expr::int_lit(t.int_value, t.pos);
      case TokenKind::String: ++i_; return {Expr::Kind::StringLit, t.pos, t.text, 0, false, {}};
      case TokenKind::LParen: {
        ++i_;
        Expr e = expr();
        expect(TokenKind::RParen, "')'");
        return e;
      }
      case TokenKind::LBrace: {
        ++i_;
        Expr e{Expr::Kind::SetLit, t.pos, "", 0, false, {}};
        if (!at(TokenKind::RBrace)) {
          e.operands.push_back(expr());
          while (at(TokenKind::Comma)) {
            ++i_;
            e.operands.push_back(expr());
          }
        }
        expect(TokenKind::RBrace, "'}'");
        return e;
      }
      default: fail("expected a term, found " + describe(t));
    }
  }

  ast::OrderDecl order_decl(SourcePos pos) {
    ast::OrderDecl d;
    d.pos = pos;
    if (!at(TokenKind::Colon)) {
      d.rule = expect(TokenKind::Ident, "rule name").text;
      expect_word("by");
      if (at_word("asc")) {
        d.direction = ast::Direction::Asc;
      } else if (at_word("desc")) {
        d.direction = ast::Direction::Desc;
      } else {
        fail("expected 'asc' or 'desc', found " + describe(peek()));
      }
      ++i_;
      d.priority = expr();
      return d;
    }
    // order: x <= y --> r { v = x } <= r { v = y }
    ++i_;
    std::string x = expect(TokenKind::Ident, "variable").text;
    TokenKind op = peek().kind;
    if (op != TokenKind::Le && op != TokenKind::Lt && op != TokenKind::Ge && op != TokenKind::Gt) {
      fail("order directive must compare two variables with <=, <, >= or >");
    }
    ++i_;
    std::string y = expect(TokenKind::Ident, "variable").text;
    expect(TokenKind::Arrow, "'-->'");
    auto [rule1, var1, val1] = rule_instance();
    if (!at(TokenKind::Le) && !at(TokenKind::Lt)) fail("expected '<=' between rule instances");
    ++i_;
    auto [rule2, var2, val2] = rule_instance();
    bool vals_ok = (val1 == x && val2 == y) || (val1 == y && val2 == x);
    if (rule1 != rule2 || var1 != var2 || !vals_ok || x == y) {
      throw ParseError(pos,
                       "unsupported order directive: only comparisons of one variable of one rule "
                       "can be expressed");
    }
    bool x_smaller = op == TokenKind::Le || op == TokenKind::Lt;
    bool first_is_smaller = (val1 == x) == x_smaller;
    d.rule = rule1;
    d.direction = first_is_smaller ? ast::Direction::Asc : ast::Direction::Desc;
    d.priority = Expr::name(var1, pos);
    return d;
  }

  std::tuple<std::string, std::string, std::string> rule_instance() {
    std::string rule = expect(TokenKind::Ident, "rule name").text;
    expect(TokenKind::LBrace, "'{'");
    std::string var = expect(TokenKind::Ident, "variable").text;
    expect(TokenKind::Eq, "'='");
    std::string val = expect(TokenKind::Ident, "variable").text;
    expect(TokenKind::RBrace, "'}'");
    return {rule, var, val};
  }

  std::span<const Token> toks_;
  std::size_t i_ = 0;
  std::set<std::string> relations_;
};

std::set<std::string> declared_relations(std::span<const Token> toks) {
  std::set<std::string> names;
  bool line_start = true;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (line_start && toks[i].kind == TokenKind::Ident &&
        (toks[i].text == "relation" || toks[i].text == "rel") &&
        toks[i + 1].kind == TokenKind::Ident) {
      names.insert(toks[i + 1].text);
    }
    line_start = toks[i].kind == TokenKind::Newline;
  }
  return names;
}

}  // namespace

ParseResult parse_program(std::string_view source) {
  ParseResult result;
  LexResult lexed = lex(source);
  result.diagnostics = std::move(lexed.diagnostics);
  Parser parser(lexed.tokens, declared_relations(lexed.tokens));
  result.program = parser.parse_all(result.diagnostics);
  return result;
}

ast::Atom parse_atom_by_template(const ast::RelationDecl& decl, std::span<const Token> tokens) {
  std::vector<Token> toks(tokens.begin(), tokens.end());
  if (toks.empty() || toks.back().kind != TokenKind::Eof) toks.push_back({TokenKind::Eof, "", 0, {}});
  if (toks.front().kind != TokenKind::Ident || toks.front().text != decl.name) {
    throw ParseError(toks.front().pos, "atom must start with relation name '" + decl.name + "'");
  }
  Parser parser(toks, {decl.name});
  ast::Atom a = parser.atom();
  auto want = effective_shape(decl);
  if (a.shape != want) {
    std::string w, got;
    for (const auto& s : want) w += (w.empty() ? "" : " ") + s;
    for (const auto& s : a.shape) got += (got.empty() ? "" : " ") + s;
    throw ParseError(a.pos, "separator mismatch for '" + decl.name + "': expected '" + w +
                                "', found '" + got + "'");
  }
  return a;
}

}  // namespace fpop
