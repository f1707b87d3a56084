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

#include "fpop/types.hpp"

namespace fpop {

std::string to_string(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Boolean:
    case Type::Kind::Integer:
    case Type::Kind::Nat:
    case Type::Kind::Symbol: return t.name;
    case Type::Kind::Set: return "Set(" + to_string(t.params.at(0)) + ")";
    case Type::Kind::Partition: return "Partition(" + to_string(t.params.at(0)) + ")";
    case Type::Kind::Tuple: {
      std::string s = "Tuple(";
      for (std::size_t i = 0; i < t.params.size(); ++i) {
        if (i) s += ", ";
        s += to_string(t.params[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

bool conforms(const Value& v, const Type& t) {
  switch (t.kind) {
    case Type::Kind::Boolean: return v.kind() == ValueKind::Boolean;
    case Type::Kind::Integer: return v.kind() == ValueKind::Integer;
    case Type::Kind::Nat: return v.kind() == ValueKind::Nat;
    case Type::Kind::Symbol: return v.kind() == ValueKind::Symbol;
    case Type::Kind::Tuple: {
      if (v.kind() != ValueKind::Tuple) return false;
      auto elems = v.elements();
      if (elems.size() != t.params.size()) return false;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (!conforms(elems[i], t.params[i])) return false;
      }
      return true;
    }
    case Type::Kind::Set:
      if (v.kind() != ValueKind::Set) return false;
      for (const auto& e : v.elements()) {
        if (!conforms(e, t.params.at(0))) return false;
      }
      return true;
    case Type::Kind::Partition:
      if (v.kind() != ValueKind::Partition) return false;
      for (const auto& block : v.blocks()) {
        for (const auto& e : block) {
          if (!conforms(e, t.params.at(0))) return false;
        }
      }
      return true;
  }
  return false;
}

}  // namespace fpop
