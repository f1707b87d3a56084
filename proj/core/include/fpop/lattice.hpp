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
#include <string_view>
#include <variant>
#include <vector>

#include "fpop/types.hpp"
#include "fpop/value.hpp"

namespace fpop {

class LatticeError : public Error {
 public:
  using Error::Error;
};

/// A join-semilattice with bottom over a carrier type. `join` and `leq` are
/// mandatory; `meet` and `top` exist for lattices that have them and are
/// only consulted when building `Dual`.
///
/// Member functions do not check carriers; the free functions below do.
class Lattice {
 public:
  virtual ~Lattice() = default;

  const std::string& name() const { return name_; }
  const Type& carrier() const { return carrier_; }

  virtual Value bottom() const = 0;
  virtual Value join(const Value& a, const Value& b) const = 0;
  virtual bool leq(const Value& a, const Value& b) const = 0;

  virtual std::optional<Value> top() const { return std::nullopt; }
  virtual bool has_meet() const { return false; }
  /// Precondition: has_meet().
  virtual Value meet(const Value& a, const Value& b) const;

  bool is_bottom(const Value& v) const { return v == bottom(); }

 protected:
  Lattice(std::string name, Type carrier) : name_(std::move(name)), carrier_(std::move(carrier)) {}

 private:
  std::string name_;
  Type carrier_;
};

using LatticeRef = std::shared_ptr<const Lattice>;

/// Parameter of a lattice constructor: element types for Set/Partition,
/// operand lattices for Dual/Product.
using LatticeParam = std::variant<Type, LatticeRef>;

/// Builds one of MinDist, MaxNat, Bool, Set(T), Partition(T), Dual(L),
/// Product(L1, ..., Ln). Throws LatticeError on unknown names, wrong
/// parameters, or Dual of a lattice without meet and top.
LatticeRef make_builtin(std::string_view name, std::span<const LatticeParam> params = {});

LatticeRef min_dist_lattice();
LatticeRef max_nat_lattice();
LatticeRef bool_lattice();
LatticeRef set_lattice(Type elem);
LatticeRef partition_lattice(Type elem);
LatticeRef dual_lattice(LatticeRef inner);
LatticeRef product_lattice(std::vector<LatticeRef> parts);

/// Carrier-checked operations.
Value join(const Lattice& l, const Value& a, const Value& b);
bool leq(const Lattice& l, const Value& a, const Value& b);
Value bottom(const Lattice& l);

}  // namespace fpop
