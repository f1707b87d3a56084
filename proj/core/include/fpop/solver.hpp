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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpop/facts_db.hpp"
#include "fpop/plan.hpp"
#include "fpop/value.hpp"

namespace fpop {

enum class Schedule { Priority, Fifo, Random };

struct SolverOptions {
  Schedule schedule = Schedule::Priority;
  std::uint64_t seed = 0;  // Random schedule only
};

/// Counters for one solve call, or accumulated over a solver's lifetime.
/// `popped == discarded + fired`; a fired task strictly updated the
/// database and ran the variants its relation triggers.
struct SolverStats {
  std::uint64_t popped = 0;
  std::uint64_t discarded = 0;
  std::uint64_t fired = 0;
  std::map<std::string, std::uint64_t> rule_firings;    // complete body matches per rule
  std::map<std::string, std::uint64_t> strict_updates;  // per relation
  std::uint64_t naive_rounds = 0;
  double wall_seconds = 0;

  std::uint64_t total_firings() const;
  std::uint64_t total_strict_updates() const;
  std::uint64_t strict_updates_of(std::string_view relation) const;
  std::uint64_t firings_of(std::string_view rule) const;

  SolverStats& operator+=(const SolverStats& o);
  std::string to_json() const;
};

struct FactInput {
  std::string relation;
  std::vector<Value> args;  // key arguments then lattice arguments
};

/// Fixed-point engine over a plan. Driven by one controller at a time:
/// insert, query and dump calls must not overlap a solve.
///
/// Pending work is a queue of facts. A popped fact is joined into the
/// database; when that changes the stored value, every variant its relation
/// triggers runs with the new value as pivot, and the head facts it derives
/// are enqueued.
class Solver {
 public:
  /// Fires the initialization variants. Throws Error when a const is not
  /// bound or has the wrong kind, or when the plan has errors.
  Solver(std::shared_ptr<const Plan> plan, const std::map<std::string, Value>& consts,
         SolverOptions options = {});
  ~Solver();

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  /// Enqueues a fact unless the database and pending work already cover it.
  /// Throws Error on an unknown relation, wrong arity or kind mismatch.
  bool insert_fact(std::string_view relation, std::span<const Value> args);
  bool insert_fact(const FactInput& f) { return insert_fact(f.relation, f.args); }

  /// Runs to quiescence with `workers` threads (the caller's thread when 1).
  SolverStats solve(std::size_t workers = 1);

  /// Processes one pending fact; false iff nothing was pending.
  bool step();

  /// Inserts `facts` and solves again from the current fixed point.
  SolverStats resolve_incremental(std::span<const FactInput> facts, std::size_t workers = 1);

  /// Evaluates every rule over the whole database in rounds until a round
  /// changes nothing. Pending facts are applied first without firing.
  SolverStats solve_naive();

  /// Runs one naive round without writing and counts the derived facts that
  /// would strictly update the database. Zero at a fixed point.
  std::uint64_t audit() const;

  /// Facts of `relation` matching `pattern` in key order. A pattern covers
  /// either the key columns or every column; nullopt matches anything.
  std::vector<Tuple> query(std::string_view relation,
                           std::span<const std::optional<Value>> pattern = {}) const;

  /// One header line per relation followed by its facts as JSON lines, in
  /// declaration then key order.
  std::string canonical_dump() const;

  std::size_t pending() const;
  const SolverStats& totals() const { return totals_; }
  const Plan& plan() const { return *plan_; }
  const FactsDB& db() const { return *db_; }

 private:
  class Impl;
  std::shared_ptr<const Plan> plan_;
  std::unique_ptr<FactsDB> db_;
  std::unique_ptr<Impl> impl_;
  SolverStats totals_;
};

/// One JSON object per fact: {"relation":"distTo","args":["c",3]}.
std::string fact_to_json(std::string_view relation, std::span<const Value> args);

}  // namespace fpop
