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

#include "fpop/partition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

namespace fpop {

namespace {

constexpr int kAmbient = -1;

using BlockIndex = std::unordered_map<Value, int, ValueHash>;

BlockIndex index_blocks(const Value& p) {
  BlockIndex idx;
  auto blocks = p.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (const auto& e : blocks[i]) idx.emplace(e, static_cast<int>(i));
  }
  return idx;
}

int block_of(const BlockIndex& idx, const Value& e) {
  auto it = idx.find(e);
  return it == idx.end() ? kAmbient : it->second;
}

}  // namespace

Value partition_join(const Value& a, const Value& b) {
  auto ia = index_blocks(a);
  auto ib = index_blocks(b);
  std::map<std::pair<int, int>, std::vector<Value>> groups;
  for (const auto& [e, blk] : ia) groups[{blk, block_of(ib, e)}].push_back(e);
  for (const auto& [e, blk] : ib) {
    if (!ia.contains(e)) groups[{kAmbient, blk}].push_back(e);
  }
  std::vector<std::vector<Value>> blocks;
  blocks.reserve(groups.size());
  for (auto& [key, members] : groups) blocks.push_back(std::move(members));
  return Value::partition(std::move(blocks));
}

bool partition_leq(const Value& a, const Value& b) {
  auto ia = index_blocks(a);
  auto ib = index_blocks(b);
  // b's ambient block lies inside a's ambient block only if b mentions
  // everything a does.
  for (const auto& [e, blk] : ia) {
    if (!ib.contains(e)) return false;
  }
  for (const auto& block : b.blocks()) {
    int target = block_of(ia, block.front());
    for (const auto& e : block) {
      if (block_of(ia, e) != target) return false;
    }
  }
  return true;
}

Value partition_meet(const Value& a, const Value& b) {
  // Node 0 stands for the shared ambient block.
  std::map<Value, std::size_t> ids;
  for (const Value* p : {&a, &b}) {
    for (const auto& block : p->blocks()) {
      for (const auto& e : block) ids.emplace(e, ids.size() + 1);
    }
  }
  DisjointSets uf(ids.size() + 1);
  for (const Value* p : {&a, &b}) {
    auto own = index_blocks(*p);
    for (const auto& block : p->blocks()) {
      for (const auto& e : block) uf.unite(ids.at(block.front()), ids.at(e));
    }
    for (const auto& [e, id] : ids) {
      if (!own.contains(e)) uf.unite(0, id);
    }
  }
  std::map<std::size_t, std::vector<Value>> comps;
  for (const auto& [e, id] : ids) {
    std::size_t root = uf.find(id);
    if (root != uf.find(0)) comps[root].push_back(e);
  }
  std::vector<std::vector<Value>> blocks;
  for (auto& [root, members] : comps) blocks.push_back(std::move(members));
  return Value::partition(std::move(blocks));
}

bool partition_separated(const Value& p, const Value& x, const Value& y) {
  int bx = kAmbient;
  int by = kAmbient;
  auto blocks = p.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), x)) bx = static_cast<int>(i);
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), y)) by = static_cast<int>(i);
  }
  return bx != by;
}

InconsistentPairsError::InconsistentPairsError(Value x, Value y, Value z)
    : Error("distinguished pairs do not form a partition: " + to_display_string(x) + " ~ " +
            to_display_string(y) + " and " + to_display_string(y) + " ~ " + to_display_string(z) +
            " but " + to_display_string(x) + " and " + to_display_string(z) + " are distinguished"),
      x_(std::move(x)),
      y_(std::move(y)),
      z_(std::move(z)) {}

Value partition_from_undistinguished_pairs(std::span<const Value> universe,
                                           std::span<const std::pair<Value, Value>> distinguished) {
  std::vector<Value> elems(universe.begin(), universe.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  const std::size_t n = elems.size();

  auto index_of = [&](const Value& v) -> std::optional<std::size_t> {
    auto it = std::lower_bound(elems.begin(), elems.end(), v);
    if (it == elems.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - elems.begin());
  };

  std::vector<std::vector<bool>> dist(n, std::vector<bool>(n, false));
  for (const auto& [x, y] : distinguished) {
    auto i = index_of(x);
    auto j = index_of(y);
    if (!i || !j) continue;
    if (*i == *j) throw InconsistentPairsError(x, x, x);
    dist[*i][*j] = dist[*j][*i] = true;
  }

  DisjointSets uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!dist[i][j]) uf.unite(i, j);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!dist[i][j] || !uf.same(i, j)) continue;
      // Shortest undistinguished path i -> j; its first two steps give the
      // violating triple since a shorter path would otherwise exist.
      std::vector<std::size_t> prev(n, n);
      std::deque<std::size_t> frontier{i};
      prev[i] = i;
      while (!frontier.empty() && prev[j] == n) {
        std::size_t u = frontier.front();
        frontier.pop_front();
        for (std::size_t v = 0; v < n; ++v) {
          if (v != u && !dist[u][v] && prev[v] == n) {
            prev[v] = u;
            frontier.push_back(v);
          }
        }
      }
      std::vector<std::size_t> path{j};
      while (path.back() != i) path.push_back(prev[path.back()]);
      std::reverse(path.begin(), path.end());
      throw InconsistentPairsError(elems[path[0]], elems[path[1]], elems[path[2]]);
    }
  }

  std::map<std::size_t, std::vector<Value>> comps;
  for (std::size_t i = 0; i < n; ++i) comps[uf.find(i)].push_back(elems[i]);
  std::vector<std::vector<Value>> blocks;
  for (auto& [root, members] : comps) blocks.push_back(std::move(members));
  return Value::partition(std::move(blocks));
}

}  // namespace fpop
