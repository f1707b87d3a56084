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


#include <gtest/gtest.h>

#include <algorithm>

#include "lattice_support.hpp"

namespace fpop {
namespace {

using testing::random_value;

Value set_of(std::initializer_list<const char*> xs) {
  std::vector<Value> v;
  for (const char* x : xs) v.push_back(Value::symbol(x));
  return Value::set(std::move(v));
}

Value part(std::vector<std::vector<std::int64_t>> blocks) {
  std::vector<std::vector<Value>> out;
  for (auto& b : blocks) {
    std::vector<Value> vb;
    for (auto x : b) vb.push_back(Value::integer(x));
    out.push_back(std::move(vb));
  }
  return Value::partition(std::move(out));
}

TEST(MinDist, JoinIsNumericMin) {
  auto l = min_dist_lattice();
  EXPECT_EQ(join(*l, Value::nat(3), Value::nat(5)), Value::nat(3));
  EXPECT_EQ(join(*l, Value::infinity(), Value::nat(7)), Value::nat(7));
}

TEST(MinDist, OrderIsReversedNumericOrder) {
  auto l = min_dist_lattice();
  EXPECT_TRUE(leq(*l, Value::infinity(), Value::nat(7)));
  EXPECT_FALSE(leq(*l, Value::nat(3), Value::nat(5)));
  EXPECT_EQ(bottom(*l), Value::infinity());
}

TEST(SetLattice, UnionAndSubset) {
  auto l = set_lattice(Type::symbol());
  EXPECT_EQ(join(*l, set_of({"a", "b"}), set_of({"b", "c"})), set_of({"a", "b", "c"}));
  EXPECT_TRUE(leq(*l, set_of({"a"}), set_of({"a", "b"})));
  EXPECT_EQ(bottom(*l), set_of({}));
}

TEST(PartitionLattice, JoinIsCoarsestCommonRefinement) {
  auto l = partition_lattice(Type::integer());
  EXPECT_EQ(join(*l, part({{1, 2}, {3, 4}}), part({{1}, {2, 3, 4}})), part({{1}, {2}, {3, 4}}));
  EXPECT_TRUE(bottom(*l).blocks().empty());
}

TEST(Combinators, DualReversesOrder) {
  auto l = make_builtin("Dual", std::vector<LatticeParam>{max_nat_lattice()});
  EXPECT_TRUE(leq(*l, Value::nat(5), Value::nat(3)));
  EXPECT_EQ(l->bottom(), Value::infinity());
}

TEST(Combinators, ProductBottomIsComponentwise) {
  auto l = make_builtin("Product",
                        std::vector<LatticeParam>{min_dist_lattice(), set_lattice(Type::symbol())});
  EXPECT_EQ(l->bottom(), Value::tuple({Value::infinity(), set_of({})}));
}

TEST(Combinators, BoolJoinIsDisjunction) {
  auto l = make_builtin("Bool");
  EXPECT_EQ(join(*l, Value::boolean(false), Value::boolean(true)), Value::boolean(true));
}

TEST(Combinators, RejectsBadConstruction) {
  EXPECT_THROW(make_builtin("Nope"), LatticeError);
  EXPECT_THROW(dual_lattice(set_lattice(Type::symbol())), LatticeError);
  EXPECT_THROW(product_lattice({}), LatticeError);
}

TEST(Lattice, CarrierMismatchThrows) {
  auto l = min_dist_lattice();
  EXPECT_THROW(join(*l, Value::symbol("a"), Value::nat(1)), Error);
  EXPECT_THROW(leq(*l, Value::nat(1), Value::boolean(true)), Error);
}

TEST(Partition, SeparatedTreatsUnmentionedAsOneBlock) {
  Value p = part({{1}, {2, 3}});
  EXPECT_FALSE(partition_separated(p, Value::integer(2), Value::integer(3)));
  EXPECT_TRUE(partition_separated(p, Value::integer(1), Value::integer(3)));
  EXPECT_FALSE(partition_separated(part({{1}}), Value::integer(5), Value::integer(6)));
}

TEST(Partition, FromUndistinguishedPairs) {
  std::vector<Value> ab = {Value::symbol("a"), Value::symbol("b")};
  std::vector<Value> abc = {Value::symbol("a"), Value::symbol("b"), Value::symbol("c")};
  using P = std::pair<Value, Value>;
  std::vector<P> one = {{ab[0], ab[1]}};
  EXPECT_EQ(partition_from_undistinguished_pairs(ab, one),
            Value::partition({{Value::symbol("a")}, {Value::symbol("b")}}));
  EXPECT_EQ(partition_from_undistinguished_pairs(abc, {}), Value::partition({abc}));
  std::vector<P> two = {{abc[0], abc[1]}, {abc[0], abc[2]}};
  EXPECT_EQ(partition_from_undistinguished_pairs(abc, two),
            Value::partition({{Value::symbol("a")}, {Value::symbol("b"), Value::symbol("c")}}));
}

TEST(Partition, InconsistentPairsNameTheTriple) {
  std::vector<Value> abc = {Value::symbol("a"), Value::symbol("b"), Value::symbol("c")};
  std::vector<std::pair<Value, Value>> pairs = {{abc[0], abc[2]}};
  try {
    partition_from_undistinguished_pairs(abc, pairs);
    FAIL() << "expected InconsistentPairsError";
  } catch (const InconsistentPairsError& e) {
    EXPECT_EQ(e.x(), abc[0]);
    EXPECT_EQ(e.y(), abc[1]);
    EXPECT_EQ(e.z(), abc[2]);
  }
}

TEST(Partition, RejectsOverlappingBlocks) { EXPECT_THROW(part({{1, 2}, {2, 3}}), Error); }

TEST(ExtNat, AdditionSaturates) {
  EXPECT_TRUE((ExtNat::infinity() + ExtNat(3)).is_infinite());
  EXPECT_TRUE((ExtNat(std::numeric_limits<std::uint64_t>::max() - 2) + ExtNat(10)).is_infinite());
  EXPECT_LT(ExtNat(1000), ExtNat::infinity());
}

class LatticeLaws : public ::testing::TestWithParam<testing::NamedLattice> {};

TEST_P(LatticeLaws, HoldOnRandomTriples) {
  const Lattice& l = *GetParam().lattice;
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    Value a = random_value(l.carrier(), rng);
    Value b = random_value(l.carrier(), rng);
    Value c = random_value(l.carrier(), rng);
    ASSERT_EQ(l.join(a, b), l.join(b, a));
    ASSERT_EQ(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
    ASSERT_EQ(l.join(a, a), a);
    ASSERT_EQ(l.leq(a, b), l.join(a, b) == b);
    ASSERT_EQ(l.join(l.bottom(), a), a);
    if (l.has_meet()) {
      ASSERT_EQ(l.meet(a, b), l.meet(b, a));
      ASSERT_TRUE(l.leq(l.meet(a, b), a));
      ASSERT_EQ(l.meet(a, l.join(a, b)), a);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Builtins, LatticeLaws, ::testing::ValuesIn(testing::builtin_lattices()),
                         [](const auto& info) { return info.param.label; });

TEST(Combinators, DoubleDualMatchesOriginal) {
  for (const auto& base : {max_nat_lattice(), min_dist_lattice(), bool_lattice()}) {
    auto dd = dual_lattice(dual_lattice(base));
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
      Value a = random_value(base->carrier(), rng);
      Value b = random_value(base->carrier(), rng);
      ASSERT_EQ(dd->leq(a, b), base->leq(a, b));
      ASSERT_EQ(dd->join(a, b), base->join(a, b));
    }
    EXPECT_EQ(dd->bottom(), base->bottom());
  }
}

TEST(Partition, JoinMatchesBruteForceUpToFiveElements) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    std::vector<Value> universe;
    for (int i = 0; i < n; ++i) universe.push_back(Value::integer(i));
    auto parts = testing::all_partitions(n);
    auto to_value = [&](const std::vector<int>& ids) {
      std::vector<std::vector<Value>> blocks(n);
      for (int i = 0; i < n; ++i) blocks[ids[i]].push_back(universe[i]);
      return Value::partition(std::move(blocks));
    };
    for (int trial = 0; trial < 200; ++trial) {
      const auto& a = parts[rng() % parts.size()];
      const auto& b = parts[rng() % parts.size()];
      Value j = partition_join(to_value(a), to_value(b));
      ASSERT_TRUE(testing::same_partition(testing::block_ids(j, universe), testing::brute_force_join(a, b)));
    }
  }
}

TEST(Value, CanonicalStringMatchesEquality) {
  std::mt19937_64 rng(3);
  std::vector<Type> types = {Type::nat(), Type::set(Type::symbol()), Type::partition(Type::symbol()),
                             Type::tuple({Type::symbol(), Type::integer(), Type::boolean()})};
  for (const auto& t : types) {
    for (int i = 0; i < 1000; ++i) {
      Value a = random_value(t, rng);
      Value b = random_value(t, rng);
      ASSERT_EQ(a == b, to_canonical_string(a) == to_canonical_string(b));
    }
  }
}

TEST(Value, SetsAreSortedAndDeduplicated) {
  Value s = Value::set({Value::symbol("b"), Value::symbol("a"), Value::symbol("b")});
  ASSERT_EQ(s.elements().size(), 2u);
  EXPECT_EQ(s, set_of({"a", "b"}));
}

}  // namespace
}  // namespace fpop
