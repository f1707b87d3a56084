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

#include "fpop/value.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

#include <json.hpp>

namespace fpop {

namespace {

struct InternTable {
  std::mutex mu;
  std::unordered_set<std::string> names;
};

InternTable& intern_table() {
  static InternTable table;
  return table;
}

const std::string* intern(std::string_view name) {
  auto& table = intern_table();
  std::lock_guard lock(table.mu);
  return &*table.names.emplace(name).first;
}

std::size_t mix(std::size_t seed, std::size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::strong_ordering compare_seq(std::span<const Value> a, std::span<const Value> b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Symbol::Symbol() : name_(intern("")) {}
Symbol::Symbol(std::string_view name) : name_(intern(name)) {}

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Boolean: return "boolean";
    case ValueKind::Integer: return "integer";
    case ValueKind::Nat: return "natural";
    case ValueKind::Symbol: return "symbol";
    case ValueKind::Tuple: return "tuple";
    case ValueKind::Set: return "set";
    case ValueKind::Partition: return "partition";
  }
  return "?";
}

Value Value::boolean(bool b) { return Value(Rep(std::in_place_index<0>, b)); }
Value Value::integer(std::int64_t i) { return Value(Rep(std::in_place_index<1>, i)); }
Value Value::nat(ExtNat n) { return Value(Rep(std::in_place_index<2>, n)); }
Value Value::symbol(Symbol s) { return Value(Rep(std::in_place_index<3>, s)); }

Value Value::tuple(std::vector<Value> elems) {
  TupleRep rep;
  rep.items = std::make_shared<const std::vector<Value>>(std::move(elems));
  return Value(Rep(std::in_place_index<4>, std::move(rep)));
}

Value Value::set(std::vector<Value> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  SetRep rep;
  rep.items = std::make_shared<const std::vector<Value>>(std::move(elems));
  return Value(Rep(std::in_place_index<5>, std::move(rep)));
}

Value Value::partition(std::vector<std::vector<Value>> blocks) {
  std::vector<std::vector<Value>> canon;
  canon.reserve(blocks.size());
  for (auto& block : blocks) {
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    if (!block.empty()) canon.push_back(std::move(block));
  }
  std::sort(canon.begin(), canon.end(),
            [](const auto& a, const auto& b) { return compare_seq(a, b) < 0; });
  std::vector<Value> all;
  for (const auto& block : canon) all.insert(all.end(), block.begin(), block.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw Error("partition blocks are not disjoint");
  }
  PartitionRep rep;
  rep.data = std::make_shared<const PartitionBlocks>(PartitionBlocks{std::move(canon)});
  return Value(Rep(std::in_place_index<6>, std::move(rep)));
}

namespace {
[[noreturn]] void kind_error(ValueKind want, ValueKind got) {
  throw Error("expected " + std::string(to_string(want)) + " value, got " +
              std::string(to_string(got)));
}
}  // namespace

bool Value::as_bool() const {
  if (kind() != ValueKind::Boolean) kind_error(ValueKind::Boolean, kind());
  return std::get<0>(rep_);
}

std::int64_t Value::as_int() const {
  if (kind() != ValueKind::Integer) kind_error(ValueKind::Integer, kind());
  return std::get<1>(rep_);
}

ExtNat Value::as_nat() const {
  if (kind() != ValueKind::Nat) kind_error(ValueKind::Nat, kind());
  return std::get<2>(rep_);
}

Symbol Value::as_symbol() const {
  if (kind() != ValueKind::Symbol) kind_error(ValueKind::Symbol, kind());
  return std::get<3>(rep_);
}

std::span<const Value> Value::elements() const {
  if (kind() == ValueKind::Tuple) return *std::get<4>(rep_).items;
  if (kind() == ValueKind::Set) return *std::get<5>(rep_).items;
  kind_error(ValueKind::Tuple, kind());
}

std::span<const std::vector<Value>> Value::blocks() const {
  if (kind() != ValueKind::Partition) kind_error(ValueKind::Partition, kind());
  return std::get<6>(rep_).data->blocks;
}

bool Value::set_contains(const Value& v) const {
  if (kind() != ValueKind::Set) kind_error(ValueKind::Set, kind());
  const auto& items = *std::get<5>(rep_).items;
  return std::binary_search(items.begin(), items.end(), v);
}

std::size_t Value::hash() const {
  std::size_t h = rep_.index();
  switch (kind()) {
    case ValueKind::Boolean: return mix(h, std::get<0>(rep_) ? 1 : 2);
    case ValueKind::Integer: return mix(h, std::hash<std::int64_t>{}(std::get<1>(rep_)));
    case ValueKind::Nat: return mix(h, std::hash<std::uint64_t>{}(std::get<2>(rep_).finite()));
    case ValueKind::Symbol: return mix(h, std::get<3>(rep_).hash());
    case ValueKind::Tuple:
    case ValueKind::Set:
      for (const auto& v : elements()) h = mix(h, v.hash());
      return h;
    case ValueKind::Partition:
      for (const auto& block : blocks()) {
        h = mix(h, block.size());
        for (const auto& v : block) h = mix(h, v.hash());
      }
      return h;
  }
  return h;
}

bool operator==(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  switch (a.kind()) {
    case ValueKind::Boolean: return std::get<0>(a.rep_) == std::get<0>(b.rep_);
    case ValueKind::Integer: return std::get<1>(a.rep_) == std::get<1>(b.rep_);
    case ValueKind::Nat: return std::get<2>(a.rep_) == std::get<2>(b.rep_);
    case ValueKind::Symbol: return std::get<3>(a.rep_) == std::get<3>(b.rep_);
    case ValueKind::Tuple:
    case ValueKind::Set: {
      auto x = a.elements();
      auto y = b.elements();
      return std::equal(x.begin(), x.end(), y.begin(), y.end());
    }
    case ValueKind::Partition: {
      auto x = a.blocks();
      auto y = b.blocks();
      return std::equal(x.begin(), x.end(), y.begin(), y.end());
    }
  }
  return false;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.rep_.index() <=> b.rep_.index(); c != 0) return c;
  switch (a.kind()) {
    case ValueKind::Boolean: return std::get<0>(a.rep_) <=> std::get<0>(b.rep_);
    case ValueKind::Integer: return std::get<1>(a.rep_) <=> std::get<1>(b.rep_);
    case ValueKind::Nat: return std::get<2>(a.rep_) <=> std::get<2>(b.rep_);
    case ValueKind::Symbol: return std::get<3>(a.rep_) <=> std::get<3>(b.rep_);
    case ValueKind::Tuple:
    case ValueKind::Set: return compare_seq(a.elements(), b.elements());
    case ValueKind::Partition: {
      auto x = a.blocks();
      auto y = b.blocks();
      return std::lexicographical_compare_three_way(
          x.begin(), x.end(), y.begin(), y.end(),
          [](const auto& p, const auto& q) { return compare_seq(p, q); });
    }
  }
  return std::strong_ordering::equal;
}

std::size_t TupleHash::operator()(const Tuple& t) const {
  std::size_t h = t.size();
  for (const auto& v : t) h = mix(h, v.hash());
  return h;
}

namespace {

void write_canonical(std::string& out, const Value& v) {
  switch (v.kind()) {
    case ValueKind::Boolean: out += v.as_bool() ? "true" : "false"; return;
    case ValueKind::Integer: out += std::to_string(v.as_int()); return;
    case ValueKind::Nat:
      if (v.as_nat().is_infinite()) {
        out += "\"inf\"";
      } else {
        out += std::to_string(v.as_nat().finite());
      }
      return;
    case ValueKind::Symbol: out += nlohmann::json(v.as_symbol().str()).dump(); return;
    case ValueKind::Tuple:
    case ValueKind::Set: {
      out += '[';
      bool first = true;
      for (const auto& e : v.elements()) {
        if (!first) out += ',';
        first = false;
        write_canonical(out, e);
      }
      out += ']';
      return;
    }
    case ValueKind::Partition: {
      out += '[';
      bool first_block = true;
      for (const auto& block : v.blocks()) {
        if (!first_block) out += ',';
        first_block = false;
        out += '[';
        for (std::size_t i = 0; i < block.size(); ++i) {
          if (i) out += ',';
          write_canonical(out, block[i]);
        }
        out += ']';
      }
      out += ']';
      return;
    }
  }
}

void write_display(std::string& out, const Value& v) {
  switch (v.kind()) {
    case ValueKind::Nat:
      if (v.as_nat().is_infinite()) {
        out += "inf";
      } else {
        out += std::to_string(v.as_nat().finite());
      }
      return;
    case ValueKind::Symbol: out += nlohmann::json(v.as_symbol().str()).dump(); return;
    case ValueKind::Tuple: {
      out += '(';
      bool first = true;
      for (const auto& e : v.elements()) {
        if (!first) out += ", ";
        first = false;
        write_display(out, e);
      }
      out += ')';
      return;
    }
    case ValueKind::Set: {
      out += '{';
      bool first = true;
      for (const auto& e : v.elements()) {
        if (!first) out += ", ";
        first = false;
        write_display(out, e);
      }
      out += '}';
      return;
    }
    case ValueKind::Partition: {
      out += '{';
      bool first_block = true;
      for (const auto& block : v.blocks()) {
        if (!first_block) out += ", ";
        first_block = false;
        out += '{';
        for (std::size_t i = 0; i < block.size(); ++i) {
          if (i) out += ", ";
          write_display(out, block[i]);
        }
        out += '}';
      }
      out += '}';
      return;
    }
    default: write_canonical(out, v); return;
  }
}

}  // namespace

std::string to_canonical_string(const Value& v) {
  std::string out;
  write_canonical(out, v);
  return out;
}

std::string to_canonical_string(std::span<const Value> tuple) {
  std::string out = "[";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    write_canonical(out, tuple[i]);
  }
  out += ']';
  return out;
}

std::string to_display_string(const Value& v) {
  std::string out;
  write_display(out, v);
  return out;
}

}  // namespace fpop
