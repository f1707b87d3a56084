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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fpop/ast.hpp"
#include "fpop/lattice.hpp"
#include "fpop/types.hpp"
#include "fpop/value.hpp"

namespace fpop {

/// Resolved term. Variables are numbered per rule.
struct TExpr {
  enum class Kind { Var, Const, ConstRef, Add, SetOf, Wildcard };

  Kind kind = Kind::Wildcard;
  int slot = -1;  // Var: variable slot; ConstRef: const index
  Value value;    // Const
  std::vector<TExpr> operands;
  Type type;

  bool is_var() const { return kind == Kind::Var; }
  /// Appends every variable slot read by this expression.
  void collect_vars(std::vector<int>& out) const;
};

struct TAtom {
  int relation = -1;
  std::vector<TExpr> args;  // key arguments first, then lattice arguments
  SourcePos pos;
};

/// A comparison, or an assignment when `assign_slot` >= 0 (then `lhs` is
/// the source expression and `rhs` is unused).
struct TConstraint {
  ast::CmpOp op = ast::CmpOp::Eq;
  TExpr lhs;
  TExpr rhs;
  int assign_slot = -1;
  SourcePos pos;
};

struct TForall {
  int var_slot = -1;
  TExpr collection;
  TAtom inner;
  SourcePos pos;
};

using TPremise = std::variant<TAtom, TConstraint, TForall>;

struct VarInfo {
  std::string name;
  Type type;
  bool lattice_derived = false;  // bound from a lattice position
};

struct TRule {
  std::string name;  // "rule@<line>" for anonymous rules
  bool anonymous = false;
  SourcePos pos;
  std::vector<TPremise> body;
  std::vector<TAtom> heads;
  std::vector<VarInfo> vars;
  /// Body indices in an order where every premise only reads variables
  /// bound by earlier ones; proves range restriction.
  std::vector<int> binding_order;

  std::size_t atom_count() const;
};

struct RelationInfo {
  std::string name;
  SourcePos pos;
  std::vector<std::string> shape;
  std::vector<Type> key_types;
  std::vector<LatticeRef> lattices;
  /// Bool for key-only relations, the single lattice, or their Product.
  LatticeRef value_lattice;

  std::size_t key_arity() const { return key_types.size(); }
  std::size_t arity() const { return key_types.size() + lattices.size(); }
  bool key_only() const { return lattices.empty(); }
  Type arg_type(std::size_t i) const {
    return i < key_types.size() ? key_types[i] : lattices[i - key_types.size()]->carrier();
  }
  /// Splits the lattice part of a fact's arguments into the stored value.
  Value pack_value(std::span<const Value> lattice_args) const;
  /// Inverse of pack_value.
  std::vector<Value> unpack_value(const Value& v) const;
};

struct ConstInfo {
  std::string name;
  Type type;
};

struct TOrder {
  int rule = -1;
  ast::Direction direction = ast::Direction::Asc;
  TExpr priority;
  SourcePos pos;
};

struct TQuery {
  std::string name;
  int relation = -1;
  std::vector<std::optional<Value>> pattern;  // per argument; nullopt = wildcard
};

struct TypedProgram {
  ast::Program source;
  std::vector<RelationInfo> relations;
  std::vector<ConstInfo> consts;
  std::vector<TRule> rules;
  std::vector<TOrder> orders;
  std::vector<TQuery> queries;

  std::optional<int> relation_index(std::string_view name) const;
  std::optional<int> rule_index(std::string_view name) const;
  std::optional<int> const_index(std::string_view name) const;
  const TQuery* query(std::string_view name) const;
};

struct ValidationResult {
  std::shared_ptr<const TypedProgram> program;  // null when there are errors
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program != nullptr; }
};

/// Resolves names, types and lattices, checks arity, separators, argument
/// kinds and range restriction, and normalizes head constraints.
ValidationResult validate(const ast::Program& p);

/// Independent check of range restriction: replays `binding_order` and
/// reports whether every premise and head reads only bound variables.
bool verify_range_restriction(const TRule& rule);

}  // namespace fpop
