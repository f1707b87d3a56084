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

#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "fpop/value.hpp"

namespace fpop {

/// Union-find over dense ids with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Coarsest partition refining both operands (the partition-lattice join,
/// where finer is greater).
Value partition_join(const Value& a, const Value& b);

/// Finest partition coarsening both operands (the partition-lattice meet).
Value partition_meet(const Value& a, const Value& b);

/// True when `b` refines `a`.
bool partition_leq(const Value& a, const Value& b);

/// True iff x and y lie in different blocks. Elements no block mentions
/// share the ambient block.
bool partition_separated(const Value& p, const Value& x, const Value& y);

/// Thrown when the complement of a distinguished-pair set is not an
/// equivalence relation. `triple` holds (x, y, z) with x~y, y~z undistinguished
/// but (x, z) distinguished.
class InconsistentPairsError : public Error {
 public:
  InconsistentPairsError(Value x, Value y, Value z);
  const Value& x() const { return x_; }
  const Value& y() const { return y_; }
  const Value& z() const { return z_; }

 private:
  Value x_, y_, z_;
};

/// Blocks are the equivalence classes of "not distinguished" over `universe`.
/// Pairs are unordered; pairs mentioning elements outside the universe are
/// ignored.
Value partition_from_undistinguished_pairs(std::span<const Value> universe,
                                           std::span<const std::pair<Value, Value>> distinguished);

}  // namespace fpop
