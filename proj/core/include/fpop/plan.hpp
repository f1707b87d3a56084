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
#include <span>
#include <string>
#include <vector>

#include "fpop/program.hpp"

namespace fpop {

/// `relation` is read by premise `premise` of `rule`. Forall premises read
/// their inner relation.
struct ConsumptionEdge {
  int relation = -1;
  int rule = -1;
  int premise = -1;
  bool via_forall = false;

  friend bool operator==(const ConsumptionEdge&, const ConsumptionEdge&) = default;
};

struct ProductionEdge {
  int rule = -1;
  int relation = -1;

  friend bool operator==(const ProductionEdge&, const ProductionEdge&) = default;
};

struct DependencyGraph {
  std::vector<ConsumptionEdge> consumes;  // one per relational premise
  std::vector<ProductionEdge> produces;   // deduplicated

  bool produces_edge(int rule, int relation) const;
};

DependencyGraph build_dependency_graph(const TypedProgram& p);

/// One step of a join pipeline.
struct PlanStep {
  enum class Kind {
    Join,          // match an atom premise against the database
    Check,         // comparison over bound variables
    Assign,        // bind a fresh variable to an expression
    Forall,        // every collection element satisfies the inner atom
    MemberLookup,  // join an atom restricted to facts whose set column holds the pivot element
    MemberFilter,  // the pivot element belongs to the (bound) collection
  };

  Kind kind = Kind::Join;
  int premise = -1;
  /// Join/MemberLookup: key columns bound before the step, ascending.
  std::vector<int> bound_columns;
  /// Join: secondary index number for `relation`, or -1 for the primary
  /// map (all key columns bound) or a scan (none bound).
  int index = -1;
  /// MemberLookup: the set-valued key column.
  int member_column = -1;
  /// Check built from an assignment whose target is already bound.
  std::optional<TConstraint> check;
};

struct PrioritySpec {
  TExpr expr;
  ast::Direction direction = ast::Direction::Asc;
  /// Every variable of `expr` is bound by the pivot atom alone.
  bool at_pivot = false;
};

/// A rule specialized for one source of new facts.
struct Variant {
  enum class Kind {
    Delta,   // pivot is a body atom matched against the new fact
    Member,  // new fact of a forall's inner relation; pivot binds the loop variable
    Rescan,  // new fact of a forall's inner relation; rerun the whole rule
    Init,    // fired once at initialization (no body atoms)
    Full,    // whole rule over the database, for naive evaluation
  };

  int id = -1;
  int rule = -1;
  Kind kind = Kind::Delta;
  int pivot_premise = -1;     // body index; -1 for Init and Full
  int trigger_relation = -1;  // relation whose updates fire this variant
  std::vector<int> join_order;  // body indices, pivot first
  std::vector<PlanStep> steps;  // pipeline after the pivot
  std::optional<PrioritySpec> priority;
};

/// Secondary indexes: per relation, a list of ordered key-column lists. A
/// lookup binding column set S uses an index whose first |S| columns are S.
struct IndexPlan {
  std::vector<std::vector<std::vector<int>>> indexes;
  /// Per relation, key columns that need a set-membership index.
  std::vector<std::vector<int>> membership;

  /// Index serving `columns` (ascending), or -1.
  int find(int relation, const std::vector<int>& columns) const;
};

struct Plan {
  std::shared_ptr<const TypedProgram> program;
  DependencyGraph graph;
  std::vector<Variant> variants;  // Delta, Member, Rescan and Init
  std::vector<Variant> full;      // one Full variant per rule
  IndexPlan indexes;
  std::vector<std::vector<int>> triggered_by;  // relation -> variant ids
  std::vector<int> init_variants;
  /// Relation -> variant whose priority orders pending facts of that
  /// relation, or -1 when such facts are scheduled first-in first-out.
  std::vector<int> relation_priority;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

/// Delta variants (one per body atom), forall variants (one per forall
/// premise), Init variants for rules with no body atoms, and one Full
/// variant per rule; indexes are not assigned yet.
std::vector<Variant> normalize(const TypedProgram& p);

/// Minimal ordered-column cover of every lookup in `variants`; sets larger
/// lookups first and orders columns by how many lookups use them.
IndexPlan plan_indexes(const TypedProgram& p, std::span<const Variant> variants);

/// Attaches each order directive to every variant of its rule. Reports a
/// directive none of whose variants can evaluate it from the pivot alone.
std::vector<Diagnostic> attach_priorities(const TypedProgram& p, std::vector<Variant>& variants);

Plan build_plan(std::shared_ptr<const TypedProgram> p);

/// Replays every variant and reports the first step that reads an unbound
/// variable, or nullopt when the plan is well formed.
std::optional<std::string> check_plan(const Plan& plan);

std::string plan_to_json(const Plan& plan);

}  // namespace fpop
