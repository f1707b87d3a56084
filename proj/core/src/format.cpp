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

#include "fpop/format.hpp"

#include <json.hpp>

namespace fpop {

namespace {

// Arguments are juxtaposed, so anything that is not a single token gets
// parenthesized.
std::string format_arg(const ast::Expr& e) {
  if (e.kind == ast::Expr::Kind::Add) return "(" + format_expr(e) + ")";
  return format_expr(e);
}

template <typename... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_premise(const ast::Premise& p) {
  return std::visit(
      overloaded{
          [](const ast::Atom& a) { return format_atom(a); },
          [](const ast::Constraint& c) {
            return format_expr(c.lhs) + " " + std::string(ast::to_string(c.op)) + " " +
                   format_expr(c.rhs);
          },
          [](const ast::Forall& f) {
            return "forall " + f.var + " in " + format_arg(f.collection) + ". " +
                   format_atom(f.inner);
          },
      },
      p);
}

std::string join_list(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::string format_expr(const ast::Expr& e) {
  using K = ast::Expr::Kind;
  switch (e.kind) {
    case K::Name: return e.text;
    case K::Wildcard: return "_";
    case K::IntLit: return std::to_string(e.int_value);
    case K::InfLit: return "inf";
    case K::StringLit: return nlohmann::json(e.text).dump();
    case K::BoolLit: return e.bool_value ? "true" : "false";
    case K::Add: {
      // Left-associative: only a right operand that is itself a sum needs parens.
      const auto& r = e.operands[1];
      std::string rhs = r.kind == K::Add ? "(" + format_expr(r) + ")" : format_expr(r);
      return format_expr(e.operands[0]) + " + " + rhs;
    }
    case K::SetLit: {
      std::vector<std::string> parts;
      for (const auto& o : e.operands) parts.push_back(format_expr(o));
      return "{" + join_list(parts, ", ") + "}";
    }
  }
  return "?";
}

std::string format_atom(const ast::Atom& a) {
  std::string out = a.relation;
  std::size_t arg = 0;
  for (const auto& piece : a.shape) {
    out += ' ';
    out += piece == "_" ? format_arg(a.args.at(arg++)) : piece;
  }
  return out;
}

std::string format_type_expr(const ast::TypeExpr& t) {
  if (t.params.empty()) return t.name;
  std::vector<std::string> parts;
  for (const auto& p : t.params) parts.push_back(format_type_expr(p));
  return t.name + "(" + join_list(parts, ", ") + ")";
}

std::string format_program(const ast::Program& p) {
  std::string out;
  for (const auto& decl : p.decls) {
    out += std::visit(
        overloaded{
            [](const ast::TypeDecl& d) {
              return "type " + d.name + (d.alias ? " = " + format_type_expr(*d.alias) : "");
            },
            [](const ast::LatticeDecl& d) {
              return "lattice " + d.name + " = " + format_type_expr(d.expr);
            },
            [](const ast::RelationDecl& d) {
              std::string s = "relation " + d.name;
              for (const auto& piece : d.shape) s += " " + piece;
              std::vector<std::string> args;
              for (const auto& a : d.args) args.push_back(format_type_expr(a));
              return s + ": " + join_list(args, ", ");
            },
            [](const ast::ConstDecl& d) {
              return "const " + d.name + ": " + format_type_expr(d.type);
            },
            [](const ast::RuleDecl& r) {
              std::string s = "rule";
              if (r.name) s += " " + *r.name;
              s += ": ";
              std::vector<std::string> heads;
              for (const auto& h : r.heads) heads.push_back(format_atom(h));
              if (r.body.empty()) return s + join_list(heads, ", ");
              std::vector<std::string> body;
              for (const auto& b : r.body) body.push_back(format_premise(b));
              return s + join_list(body, ", ") + " --> " + join_list(heads, ", ");
            },
            [](const ast::OrderDecl& d) {
              return "order " + d.rule + " by " +
                     (d.direction == ast::Direction::Asc ? "asc " : "desc ") +
                     format_expr(d.priority);
            },
            [](const ast::QueryDecl& q) { return "query " + q.name + ": " + format_atom(q.pattern); },
        },
        decl);
    out += '\n';
  }
  return out;
}

}  // namespace fpop
