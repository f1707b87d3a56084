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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fpop {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interned string. Equality is pointer equality; ordering is by content so
/// that canonical orders do not depend on interning order.
class Symbol {
 public:
  Symbol();
  explicit Symbol(std::string_view name);

  const std::string& str() const { return *name_; }
  std::size_t hash() const { return std::hash<const void*>{}(name_); }

  friend bool operator==(Symbol a, Symbol b) { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.name_ == b.name_) return std::strong_ordering::equal;
    return a.name_->compare(*b.name_) <=> 0;
  }

 private:
  const std::string* name_;
};

/// Natural number extended with infinity. Addition saturates to infinity.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr explicit ExtNat(std::uint64_t n) : raw_(n == kInfRaw ? kInfRaw - 1 : n) {}

  static constexpr ExtNat infinity() {
    ExtNat e;
    e.raw_ = kInfRaw;
    return e;
  }

  constexpr bool is_infinite() const { return raw_ == kInfRaw; }
  constexpr std::uint64_t finite() const { return raw_; }

  friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    std::uint64_t sum = a.raw_ + b.raw_;
    if (sum < a.raw_ || sum >= kInfRaw) return infinity();
    ExtNat e;
    e.raw_ = sum;
    return e;
  }

  friend constexpr auto operator<=>(ExtNat, ExtNat) = default;

 private:
  static constexpr std::uint64_t kInfRaw = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t raw_ = 0;
};

enum class ValueKind : std::uint8_t { Boolean, Integer, Nat, Symbol, Tuple, Set, Partition };

std::string_view to_string(ValueKind kind);

class Value;

/// Partition of an open universe: explicit disjoint blocks plus an implicit
/// ambient block holding every element no explicit block mentions.
struct PartitionBlocks {
  std::vector<std::vector<Value>> blocks;
};

/// Immutable ground value. Compound payloads are shared, so copies are cheap
/// and safe to hand across threads.
class Value {
 public:
  Value() : rep_(false) {}

  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value nat(ExtNat n);
  static Value nat(std::uint64_t n) { return nat(ExtNat(n)); }
  static Value infinity() { return nat(ExtNat::infinity()); }
  static Value symbol(Symbol s);
  static Value symbol(std::string_view s) { return symbol(Symbol(s)); }
  static Value tuple(std::vector<Value> elems);
  /// Sorts and deduplicates.
  static Value set(std::vector<Value> elems);
  /// Canonicalizes: sorts each block, drops empty blocks, sorts blocks.
  /// Throws Error when two blocks share an element.
  static Value partition(std::vector<std::vector<Value>> blocks);

  ValueKind kind() const { return static_cast<ValueKind>(rep_.index()); }

  bool as_bool() const;
  std::int64_t as_int() const;
  ExtNat as_nat() const;
  Symbol as_symbol() const;
  /// Elements of a tuple or set.
  std::span<const Value> elements() const;
  /// Blocks of a partition.
  std::span<const std::vector<Value>> blocks() const;

  bool set_contains(const Value& v) const;

  std::size_t hash() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  struct Seq {
    std::shared_ptr<const std::vector<Value>> items;
  };
  struct TupleRep : Seq {};
  struct SetRep : Seq {};
  struct PartitionRep {
    std::shared_ptr<const PartitionBlocks> data;
  };
  using Rep = std::variant<bool, std::int64_t, ExtNat, Symbol, TupleRep, SetRep, PartitionRep>;

  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

using Tuple = std::vector<Value>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const;
};

/// Canonical JSON text: symbols quoted, infinity as "inf", sets and
/// partitions as sorted arrays. Equal values give identical bytes.
std::string to_canonical_string(const Value& v);
std::string to_canonical_string(std::span<const Value> tuple);

/// Human-readable form used in diagnostics and program text.
std::string to_display_string(const Value& v);

}  // namespace fpop

template <>
struct std::hash<fpop::Value> {
  std::size_t operator()(const fpop::Value& v) const { return v.hash(); }
};
