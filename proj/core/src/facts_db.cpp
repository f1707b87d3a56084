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

#include "fpop/facts_db.hpp"

#include <algorithm>
#include <array>

namespace fpop {

namespace {

constexpr std::size_t kShards = 64;

struct Entry {
  Value value;
  Value pending;
  std::uint32_t pending_count = 0;
  bool present = false;
};

struct Shard {
  mutable std::mutex mu;
  std::unordered_map<Tuple, Entry, TupleHash> map;
};

struct SecondaryIndex {
  std::vector<int> columns;
  mutable std::shared_mutex mu;
  std::map<Tuple, std::vector<Tuple>> rows;  // projection -> keys
};

struct MemberIndex {
  int column = -1;
  mutable std::shared_mutex mu;
  std::unordered_map<Value, std::vector<Tuple>, ValueHash> rows;
};

}  // namespace

struct FactsDB::Store {
  LatticeRef lattice;
  std::array<Shard, kShards> shards;
  std::vector<std::unique_ptr<SecondaryIndex>> indexes;
  std::vector<std::unique_ptr<MemberIndex>> members;
  std::atomic<std::uint64_t> version{0};
  std::atomic<std::size_t> count{0};

  Shard& shard(const Tuple& key) { return shards[TupleHash{}(key) % kShards]; }
  const Shard& shard(const Tuple& key) const { return shards[TupleHash{}(key) % kShards]; }

  // Caller holds the key's shard lock.
  void index_new_key(const Tuple& key) {
    for (auto& idx : indexes) {
      Tuple proj;
      proj.reserve(idx->columns.size());
      for (int c : idx->columns) proj.push_back(key[c]);
      std::unique_lock lock(idx->mu);
      idx->rows[std::move(proj)].push_back(key);
    }
    for (auto& m : members) {
      const Value& set = key[m->column];
      std::unique_lock lock(m->mu);
      for (const auto& e : set.elements()) m->rows[e].push_back(key);
    }
  }
};

FactsDB::FactsDB(std::shared_ptr<const TypedProgram> program, const IndexPlan& plan)
    : program_(std::move(program)) {
  for (std::size_t r = 0; r < program_->relations.size(); ++r) {
    auto store = std::make_unique<Store>();
    store->lattice = program_->relations[r].value_lattice;
    if (r < plan.indexes.size()) {
      for (const auto& cols : plan.indexes[r]) {
        auto idx = std::make_unique<SecondaryIndex>();
        idx->columns = cols;
        store->indexes.push_back(std::move(idx));
      }
    }
    if (r < plan.membership.size()) {
      for (int c : plan.membership[r]) {
        auto m = std::make_unique<MemberIndex>();
        m->column = c;
        store->members.push_back(std::move(m));
      }
    }
    stores_.push_back(std::move(store));
  }
}

FactsDB::~FactsDB() = default;

bool FactsDB::reserve(int rel, const Tuple& key, const Value& v) {
  Store& s = *stores_[rel];
  const Lattice& l = *s.lattice;
  Shard& sh = s.shard(key);
  std::lock_guard lock(sh.mu);
  auto [it, inserted] = sh.map.try_emplace(key);
  Entry& e = it->second;
  Value covered = e.present ? e.value : l.bottom();
  if (e.pending_count) covered = l.join(covered, e.pending);
  if (l.leq(v, covered)) {
    if (inserted) sh.map.erase(it);
    return false;
  }
  e.pending = e.pending_count ? l.join(e.pending, v) : v;
  ++e.pending_count;
  return true;
}

FactsDB::Applied FactsDB::apply(int rel, const Tuple& key, const Value& v, bool reserved) {
  Store& s = *stores_[rel];
  const Lattice& l = *s.lattice;
  Shard& sh = s.shard(key);
  std::lock_guard lock(sh.mu);
  auto [it, inserted] = sh.map.try_emplace(key);
  Entry& e = it->second;
  if (reserved && e.pending_count && --e.pending_count == 0) e.pending = Value();
  Applied out;
  if (e.present) {
    Value joined = l.join(e.value, v);
    if (joined != e.value) {
      e.value = std::move(joined);
      out.changed = true;
    }
  } else if (!l.is_bottom(v)) {
    e.value = v;
    e.present = true;
    out.changed = true;
    s.count.fetch_add(1, std::memory_order_relaxed);
    s.index_new_key(key);
  }
  if (out.changed) s.version.fetch_add(1, std::memory_order_relaxed);
  out.value = e.present ? e.value : l.bottom();
  if (!e.present && e.pending_count == 0) sh.map.erase(it);
  return out;
}

std::optional<Value> FactsDB::get(int rel, const Tuple& key) const {
  const Store& s = *stores_[rel];
  const Shard& sh = s.shard(key);
  std::lock_guard lock(sh.mu);
  auto it = sh.map.find(key);
  if (it == sh.map.end() || !it->second.present) return std::nullopt;
  return it->second.value;
}

std::vector<std::pair<Tuple, Value>> FactsDB::facts(int rel) const {
  const Store& s = *stores_[rel];
  std::vector<std::pair<Tuple, Value>> out;
  out.reserve(s.count.load(std::memory_order_relaxed));
  for (const auto& sh : s.shards) {
    std::lock_guard lock(sh.mu);
    for (const auto& [k, e] : sh.map) {
      if (e.present) out.emplace_back(k, e.value);
    }
  }
  return out;
}

std::vector<std::pair<Tuple, Value>> FactsDB::sorted_facts(int rel) const {
  auto out = facts(rel);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<Tuple> FactsDB::index_lookup(int rel, int index, std::span<const Value> prefix) const {
  const SecondaryIndex& idx = *stores_[rel]->indexes.at(index);
  Tuple lo(prefix.begin(), prefix.end());
  std::vector<Tuple> out;
  std::shared_lock lock(idx.mu);
  for (auto it = idx.rows.lower_bound(lo); it != idx.rows.end(); ++it) {
    if (!std::equal(prefix.begin(), prefix.end(), it->first.begin())) break;
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<Tuple> FactsDB::member_lookup(int rel, int column, const Value& elem) const {
  for (const auto& m : stores_[rel]->members) {
    if (m->column != column) continue;
    std::shared_lock lock(m->mu);
    auto it = m->rows.find(elem);
    if (it == m->rows.end()) return {};
    return it->second;
  }
  throw Error("no membership index on column " + std::to_string(column));
}

std::size_t FactsDB::size(int rel) const { return stores_[rel]->count.load(); }

std::uint64_t FactsDB::version(int rel) const { return stores_[rel]->version.load(); }

bool FactsDB::indexes_consistent() const {
  for (std::size_t r = 0; r < stores_.size(); ++r) {
    const Store& s = *stores_[r];
    auto present = facts(static_cast<int>(r));
    std::size_t n = present.size();
    for (const auto& idx : s.indexes) {
      std::size_t rows = 0;
      for (const auto& [proj, keys] : idx->rows) {
        for (const auto& k : keys) {
          ++rows;
          if (!get(static_cast<int>(r), k)) return false;
          for (std::size_t i = 0; i < idx->columns.size(); ++i) {
            if (k[idx->columns[i]] != proj[i]) return false;
          }
        }
      }
      if (rows != n) return false;
    }
    for (const auto& m : s.members) {
      std::size_t rows = 0;
      for (const auto& [elem, keys] : m->rows) {
        for (const auto& k : keys) {
          ++rows;
          if (!get(static_cast<int>(r), k) || !k[m->column].set_contains(elem)) return false;
        }
      }
      std::size_t want = 0;
      for (const auto& [k, v] : present) want += k[m->column].elements().size();
      if (rows != want) return false;
    }
  }
  return true;
}

}  // namespace fpop
