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

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fpop/plan.hpp"
#include "fpop/program.hpp"
#include "fpop/value.hpp"

namespace fpop {

/// Per-relation store of key tuple -> lattice value. Absent keys hold the
/// relation's bottom; stored values only ascend.
///
/// Each key also carries a pending overlay: the join of values enqueued but
/// not yet applied. `reserve` refuses values already covered by the stored
/// value joined with the overlay.
///
/// Thread-safe: keys are spread over mutex-guarded shards, and an entry's
/// secondary and membership index rows are written under its shard lock
/// when the key first becomes present.
class FactsDB {
 public:
  FactsDB(std::shared_ptr<const TypedProgram> program, const IndexPlan& plan);
  ~FactsDB();

  FactsDB(const FactsDB&) = delete;
  FactsDB& operator=(const FactsDB&) = delete;

  struct Applied {
    bool changed = false;
    Value value;  // stored value after the join
  };

  /// Adds `v` to the pending overlay unless stored ⊔ pending already covers it.
  bool reserve(int rel, const Tuple& key, const Value& v);

  /// Joins `v` into the stored value. `reserved` releases one pending slot.
  Applied apply(int rel, const Tuple& key, const Value& v, bool reserved);

  std::optional<Value> get(int rel, const Tuple& key) const;

  /// Snapshot of all present facts of `rel`, unordered.
  std::vector<std::pair<Tuple, Value>> facts(int rel) const;
  /// Snapshot ordered by key.
  std::vector<std::pair<Tuple, Value>> sorted_facts(int rel) const;

  /// Keys whose projection onto the first `prefix.size()` columns of
  /// secondary index `index` equals `prefix`.
  std::vector<Tuple> index_lookup(int rel, int index, std::span<const Value> prefix) const;

  /// Keys whose set-valued `column` contains `elem`.
  std::vector<Tuple> member_lookup(int rel, int column, const Value& elem) const;

  std::size_t size(int rel) const;
  std::uint64_t version(int rel) const;
  std::size_t relation_count() const { return stores_.size(); }

  /// Every index row points at a present key and every present key is
  /// indexed. Requires quiescence.
  bool indexes_consistent() const;

 private:
  struct Store;

  std::shared_ptr<const TypedProgram> program_;
  std::vector<std::unique_ptr<Store>> stores_;
};

}  // namespace fpop
