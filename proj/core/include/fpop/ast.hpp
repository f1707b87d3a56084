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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpop/diagnostics.hpp"

namespace fpop::ast {

/// Term or arithmetic expression as written. Identifiers stay unresolved
/// (variable or const) until validation.
struct Expr {
  enum class Kind { Name, Wildcard, IntLit, InfLit, StringLit, BoolLit, Add, SetLit };

  Kind kind = Kind::Wildcard;
  SourcePos pos;
  std::string text;            // Name, StringLit
  std::int64_t int_value = 0;  // IntLit
  bool bool_value = false;     // BoolLit
  std::vector<Expr> operands;  // Add (binary), SetLit

  static Expr name(std::string n, SourcePos p = {}) { return {Kind::Name, p, std::move(n), 0, false, {}}; }
  static Expr wildcard(SourcePos p = {}) { return {Kind::Wildcard, p, "", 0, false, {}}; }
  static Expr int_lit(std::int64_t v, SourcePos p = {}) { return {Kind::IntLit, p, "", v, false, {}}; }
  static Expr add(Expr l, Expr r) {
    SourcePos p = l.pos;
    return {Kind::Add, p, "", 0, false, {std::move(l), std::move(r)}};
  }

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// Mixfix atom. `shape` interleaves "_" placeholders with the separator
/// tokens actually written, e.g. {"_", "_", "=", "_"} for `edge v1 v2 = d2`.
struct Atom {
  std::string relation;
  SourcePos pos;
  std::vector<Expr> args;
  std::vector<std::string> shape;

  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class CmpOp { Le, Lt, Eq, Ge, Gt };

struct Constraint {
  CmpOp op = CmpOp::Eq;
  Expr lhs;
  Expr rhs;
  SourcePos pos;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// `forall var in collection. inner`
struct Forall {
  std::string var;
  Expr collection;
  Atom inner;
  SourcePos pos;

  friend bool operator==(const Forall&, const Forall&) = default;
};

using Premise = std::variant<Atom, Constraint, Forall>;

/// Type or lattice expression: `Vertex`, `Set(State)`, `Dual(MaxNat)`.
struct TypeExpr {
  std::string name;
  std::vector<TypeExpr> params;
  SourcePos pos;

  friend bool operator==(const TypeExpr&, const TypeExpr&) = default;
};

struct TypeDecl {
  std::string name;
  std::optional<TypeExpr> alias;
  SourcePos pos;
  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct LatticeDecl {
  std::string name;
  TypeExpr expr;
  SourcePos pos;
  friend bool operator==(const LatticeDecl&, const LatticeDecl&) = default;
};

struct RelationDecl {
  std::string name;
  std::vector<std::string> shape;  // empty when no template was written
  std::vector<TypeExpr> args;
  SourcePos pos;
  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

struct ConstDecl {
  std::string name;
  TypeExpr type;
  SourcePos pos;
  friend bool operator==(const ConstDecl&, const ConstDecl&) = default;
};

/// A rule without `-->` is an axiom: `body` is empty and `heads` holds
/// what was written.
struct RuleDecl {
  std::optional<std::string> name;
  std::vector<Premise> body;
  std::vector<Atom> heads;
  SourcePos pos;
  friend bool operator==(const RuleDecl&, const RuleDecl&) = default;
};

enum class Direction { Asc, Desc };

/// Normalized `order <rule> by asc|desc <expr>`.
struct OrderDecl {
  std::string rule;
  Direction direction = Direction::Asc;
  Expr priority;
  SourcePos pos;
  friend bool operator==(const OrderDecl&, const OrderDecl&) = default;
};

struct QueryDecl {
  std::string name;
  Atom pattern;
  SourcePos pos;
  friend bool operator==(const QueryDecl&, const QueryDecl&) = default;
};

using Decl = std::variant<TypeDecl, LatticeDecl, RelationDecl, ConstDecl, RuleDecl, OrderDecl, QueryDecl>;

struct Program {
  std::vector<Decl> decls;

  template <typename T>
  std::vector<const T*> all() const {
    std::vector<const T*> out;
    for (const auto& d : decls) {
      if (const auto* p = std::get_if<T>(&d)) out.push_back(p);
    }
    return out;
  }

  friend bool operator==(const Program&, const Program&) = default;
};

std::string_view to_string(CmpOp op);

}  // namespace fpop::ast
