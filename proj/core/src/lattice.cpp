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

#include "fpop/lattice.hpp"

#include <algorithm>
#include <iterator>

#include "fpop/partition.hpp"

namespace fpop {

Value Lattice::meet(const Value&, const Value&) const {
  throw LatticeError("lattice " + name() + " has no meet");
}

namespace {

// Numerically smaller distances are greater; infinity is bottom.
class MinDistLattice final : public Lattice {
 public:
  MinDistLattice() : Lattice("MinDist", Type::nat()) {}
  Value bottom() const override { return Value::infinity(); }
  Value join(const Value& a, const Value& b) const override {
    return a.as_nat() <= b.as_nat() ? a : b;
  }
  bool leq(const Value& a, const Value& b) const override { return a.as_nat() >= b.as_nat(); }
  std::optional<Value> top() const override { return Value::nat(0); }
  bool has_meet() const override { return true; }
  Value meet(const Value& a, const Value& b) const override {
    return a.as_nat() >= b.as_nat() ? a : b;
  }
};

class MaxNatLattice final : public Lattice {
 public:
  MaxNatLattice() : Lattice("MaxNat", Type::nat()) {}
  Value bottom() const override { return Value::nat(0); }
  Value join(const Value& a, const Value& b) const override {
    return a.as_nat() >= b.as_nat() ? a : b;
  }
  bool leq(const Value& a, const Value& b) const override { return a.as_nat() <= b.as_nat(); }
  std::optional<Value> top() const override { return Value::infinity(); }
  bool has_meet() const override { return true; }
  Value meet(const Value& a, const Value& b) const override {
    return a.as_nat() <= b.as_nat() ? a : b;
  }
};

class BoolLattice final : public Lattice {
 public:
  BoolLattice() : Lattice("Bool", Type::boolean()) {}
  Value bottom() const override { return Value::boolean(false); }
  Value join(const Value& a, const Value& b) const override {
    return Value::boolean(a.as_bool() || b.as_bool());
  }
  bool leq(const Value& a, const Value& b) const override { return !a.as_bool() || b.as_bool(); }
  std::optional<Value> top() const override { return Value::boolean(true); }
  bool has_meet() const override { return true; }
  Value meet(const Value& a, const Value& b) const override {
    return Value::boolean(a.as_bool() && b.as_bool());
  }
};

class SetLattice final : public Lattice {
 public:
  explicit SetLattice(Type elem)
      : Lattice("Set(" + to_string(elem) + ")", Type::set(elem)) {}
  Value bottom() const override { return Value::set({}); }
  Value join(const Value& a, const Value& b) const override {
    auto x = a.elements();
    auto y = b.elements();
    if (std::includes(x.begin(), x.end(), y.begin(), y.end())) return a;
    if (std::includes(y.begin(), y.end(), x.begin(), x.end())) return b;
    std::vector<Value> out;
    out.reserve(x.size() + y.size());
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return Value::set(std::move(out));
  }
  bool leq(const Value& a, const Value& b) const override {
    auto x = a.elements();
    auto y = b.elements();
    return std::includes(y.begin(), y.end(), x.begin(), x.end());
  }
  bool has_meet() const override { return true; }
  Value meet(const Value& a, const Value& b) const override {
    auto x = a.elements();
    auto y = b.elements();
    std::vector<Value> out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return Value::set(std::move(out));
  }
};

// Finer partitions are greater; bottom puts everything in the ambient block.
class PartitionLattice final : public Lattice {
 public:
  explicit PartitionLattice(Type elem)
      : Lattice("Partition(" + to_string(elem) + ")", Type::partition(elem)) {}
  Value bottom() const override { return Value::partition({}); }
  Value join(const Value& a, const Value& b) const override { return partition_join(a, b); }
  bool leq(const Value& a, const Value& b) const override { return partition_leq(a, b); }
  bool has_meet() const override { return true; }
  Value meet(const Value& a, const Value& b) const override { return partition_meet(a, b); }
};

class DualLattice final : public Lattice {
 public:
  DualLattice(LatticeRef inner, Value bottom)
      : Lattice("Dual(" + inner->name() + ")", inner->carrier()),
        inner_(std::move(inner)),
        bottom_(std::move(bottom)) {}
  Value bottom() const override { return bottom_; }
  Value join(const Value& a, const Value& b) const override { return inner_->meet(a, b); }
  bool leq(const Value& a, const Value& b) const override { return inner_->leq(b, a); }
  std::optional<Value> top() const override { return inner_->bottom(); }
  bool has_meet() const override { return true; }
  Value meet(const Value& a, const Value& b) const override { return inner_->join(a, b); }

 private:
  LatticeRef inner_;
  Value bottom_;
};

Type product_carrier(const std::vector<LatticeRef>& parts) {
  std::vector<Type> elems;
  for (const auto& p : parts) elems.push_back(p->carrier());
  return Type::tuple(std::move(elems));
}

std::string product_name(const std::vector<LatticeRef>& parts) {
  std::string n = "Product(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) n += ", ";
    n += parts[i]->name();
  }
  return n + ")";
}

class ProductLattice final : public Lattice {
 public:
  explicit ProductLattice(std::vector<LatticeRef> parts)
      : Lattice(product_name(parts), product_carrier(parts)), parts_(std::move(parts)) {}

  Value bottom() const override {
    std::vector<Value> out;
    for (const auto& p : parts_) out.push_back(p->bottom());
    return Value::tuple(std::move(out));
  }
  Value join(const Value& a, const Value& b) const override {
    auto x = a.elements();
    auto y = b.elements();
    std::vector<Value> out;
    out.reserve(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) out.push_back(parts_[i]->join(x[i], y[i]));
    return Value::tuple(std::move(out));
  }
  bool leq(const Value& a, const Value& b) const override {
    auto x = a.elements();
    auto y = b.elements();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (!parts_[i]->leq(x[i], y[i])) return false;
    }
    return true;
  }
  std::optional<Value> top() const override {
    std::vector<Value> out;
    for (const auto& p : parts_) {
      auto t = p->top();
      if (!t) return std::nullopt;
      out.push_back(*t);
    }
    return Value::tuple(std::move(out));
  }
  bool has_meet() const override {
    return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p->has_meet(); });
  }
  Value meet(const Value& a, const Value& b) const override {
    auto x = a.elements();
    auto y = b.elements();
    std::vector<Value> out;
    for (std::size_t i = 0; i < parts_.size(); ++i) out.push_back(parts_[i]->meet(x[i], y[i]));
    return Value::tuple(std::move(out));
  }

 private:
  std::vector<LatticeRef> parts_;
};

const Type& expect_type(std::string_view name, std::span<const LatticeParam> params) {
  if (params.size() != 1 || !std::holds_alternative<Type>(params[0])) {
    throw LatticeError(std::string(name) + " takes exactly one type parameter");
  }
  return std::get<Type>(params[0]);
}

void expect_none(std::string_view name, std::span<const LatticeParam> params) {
  if (!params.empty()) throw LatticeError(std::string(name) + " takes no parameters");
}

}  // namespace

LatticeRef min_dist_lattice() {
  static const LatticeRef l = std::make_shared<MinDistLattice>();
  return l;
}

LatticeRef max_nat_lattice() {
  static const LatticeRef l = std::make_shared<MaxNatLattice>();
  return l;
}

LatticeRef bool_lattice() {
  static const LatticeRef l = std::make_shared<BoolLattice>();
  return l;
}

LatticeRef set_lattice(Type elem) { return std::make_shared<SetLattice>(std::move(elem)); }

LatticeRef partition_lattice(Type elem) {
  return std::make_shared<PartitionLattice>(std::move(elem));
}

LatticeRef dual_lattice(LatticeRef inner) {
  if (!inner->has_meet()) throw LatticeError("Dual(" + inner->name() + "): lattice has no meet");
  auto top = inner->top();
  if (!top) throw LatticeError("Dual(" + inner->name() + "): lattice has no top to serve as bottom");
  return std::make_shared<DualLattice>(std::move(inner), *top);
}

LatticeRef product_lattice(std::vector<LatticeRef> parts) {
  if (parts.empty()) throw LatticeError("Product needs at least one lattice");
  return std::make_shared<ProductLattice>(std::move(parts));
}

LatticeRef make_builtin(std::string_view name, std::span<const LatticeParam> params) {
  if (name == "MinDist") {
    expect_none(name, params);
    return min_dist_lattice();
  }
  if (name == "MaxNat") {
    expect_none(name, params);
    return max_nat_lattice();
  }
  if (name == "Bool") {
    expect_none(name, params);
    return bool_lattice();
  }
  if (name == "Set") return set_lattice(expect_type(name, params));
  if (name == "Partition") return partition_lattice(expect_type(name, params));
  if (name == "Dual") {
    if (params.size() != 1 || !std::holds_alternative<LatticeRef>(params[0])) {
      throw LatticeError("Dual takes exactly one lattice parameter");
    }
    return dual_lattice(std::get<LatticeRef>(params[0]));
  }
  if (name == "Product") {
    std::vector<LatticeRef> parts;
    for (const auto& p : params) {
      if (!std::holds_alternative<LatticeRef>(p)) {
        throw LatticeError("Product parameters must be lattices");
      }
      parts.push_back(std::get<LatticeRef>(p));
    }
    return product_lattice(std::move(parts));
  }
  throw LatticeError("unknown lattice '" + std::string(name) + "'");
}

namespace {
void check_carrier(const Lattice& l, const Value& v) {
  if (!conforms(v, l.carrier())) {
    throw LatticeError("value " + to_display_string(v) + " is not in the carrier of " + l.name());
  }
}
}  // namespace

Value join(const Lattice& l, const Value& a, const Value& b) {
  check_carrier(l, a);
  check_carrier(l, b);
  return l.join(a, b);
}

bool leq(const Lattice& l, const Value& a, const Value& b) {
  check_carrier(l, a);
  check_carrier(l, b);
  return l.leq(a, b);
}

Value bottom(const Lattice& l) { return l.bottom(); }

}  // namespace fpop
