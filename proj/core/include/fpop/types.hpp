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

#include <string>
#include <vector>

#include "fpop/value.hpp"

namespace fpop {

/// Ground type of a value. Symbol types are nominal: `Vertex` and `State`
/// are both symbol-carried but do not unify.
struct Type {
  enum class Kind { Boolean, Integer, Nat, Symbol, Tuple, Set, Partition };

  Kind kind = Kind::Symbol;
  std::string name;          // nominal name for Symbol kind
  std::vector<Type> params;  // element types for Tuple/Set/Partition

  static Type boolean() { return {Kind::Boolean, "Bool", {}}; }
  static Type integer() { return {Kind::Integer, "Int", {}}; }
  static Type nat() { return {Kind::Nat, "Nat", {}}; }
  static Type symbol(std::string n = "Symbol") { return {Kind::Symbol, std::move(n), {}}; }
  static Type tuple(std::vector<Type> elems) { return {Kind::Tuple, "", std::move(elems)}; }
  static Type set(Type elem) { return {Kind::Set, "", {std::move(elem)}}; }
  static Type partition(Type elem) { return {Kind::Partition, "", {std::move(elem)}}; }

  bool is_numeric() const { return kind == Kind::Integer || kind == Kind::Nat; }

  friend bool operator==(const Type&, const Type&) = default;
};

std::string to_string(const Type& t);

/// Structural check that `v` inhabits `t`. Nominal symbol names are not
/// tracked on values, so any symbol conforms to any symbol type.
bool conforms(const Value& v, const Type& t);

}  // namespace fpop
