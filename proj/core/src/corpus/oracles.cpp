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


#include "fpop/corpus/oracles.hpp"

#include <algorithm>
#include <deque>

namespace fpop::corpus {

std::map<std::string, ExtNat> oracle_shortest_paths(const GraphInstance& g) {
  std::map<std::string, ExtNat> dist;
  for (const auto& v : g.vertices) dist[v] = ExtNat::infinity();
  dist[g.start] = ExtNat(0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : g.edges) {
      ExtNat via = dist[e.from] + ExtNat(e.weight);
      if (via < dist[e.to]) {
        dist[e.to] = via;
        changed = true;
      }
    }
  }
  return dist;
}

Value oracle_minimize(const DfaInstance& input) {
  DfaInstance d = input.completed();
  std::map<std::string, std::size_t> id;
  for (const auto& s : d.states) id.emplace(s, id.size());
  const std::size_t n = id.size();
  const std::size_t k = d.alphabet.size();
  std::map<std::string, std::size_t> letter;
  for (const auto& c : d.alphabet) letter.emplace(c, letter.size());

  std::vector<std::vector<std::size_t>> delta(n, std::vector<std::size_t>(k, n));
  std::vector<std::vector<std::size_t>> preds(n);
  for (const auto& e : d.edges) {
    delta[id.at(e.from)][letter.at(e.symbol)] = id.at(e.to);
    preds[id.at(e.to)].push_back(id.at(e.from));
  }
  std::vector<bool> acc(n, false);
  for (const auto& s : d.accepting) acc[id.at(s)] = true;

  auto closure = [n](std::vector<std::size_t> seeds, const auto& next) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> work;
    for (auto s : seeds) {
      if (!seen[s]) {
        seen[s] = true;
        work.push_back(s);
      }
    }
    while (!work.empty()) {
      std::size_t u = work.front();
      work.pop_front();
      for (std::size_t v : next(u)) {
        if (!seen[v]) {
          seen[v] = true;
          work.push_back(v);
        }
      }
    }
    return seen;
  };
  auto reachable = closure({id.at(d.start)}, [&](std::size_t u) { return delta[u]; });
  std::vector<std::size_t> finals;
  for (std::size_t i = 0; i < n; ++i) {
    if (acc[i]) finals.push_back(i);
  }
  auto live = closure(finals, [&](std::size_t u) { return preds[u]; });

  std::vector<std::vector<bool>> marked(n, std::vector<bool>(n, false));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) marked[p][q] = acc[p] != acc[q];
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (marked[p][q]) continue;
        for (std::size_t c = 0; c < k; ++c) {
          if (marked[delta[p][c]][delta[q][c]]) {
            marked[p][q] = true;
            changed = true;
            break;
          }
        }
      }
    }
  }

  std::vector<std::vector<Value>> blocks;
  std::vector<bool> placed(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    if (placed[p] || !reachable[p] || !live[p]) continue;
    std::vector<Value> block;
    for (std::size_t q = p; q < n; ++q) {
      if (!placed[q] && reachable[q] && live[q] && !marked[p][q]) {
        placed[q] = true;
        block.push_back(Value::symbol(d.states[q]));
      }
    }
    blocks.push_back(std::move(block));
  }
  return Value::partition(std::move(blocks));
}

ParseChart oracle_cyk(const CnfGrammar& g, const std::vector<std::string>& input) {
  const std::size_t n = input.size();
  ParseChart chart;
  auto find = [&](const std::string& s, std::size_t i, std::size_t j) -> const std::uint64_t* {
    auto it = chart.find({s, i, j});
    return it == chart.end() ? nullptr : &it->second;
  };
  bool changed = false;
  auto offer = [&](const std::string& s, std::size_t i, std::size_t j, std::uint64_t w) {
    if (!g.weighted) w = 0;
    auto [it, inserted] = chart.try_emplace({s, i, j}, w);
    if (inserted || w < it->second) {
      it->second = w;
      changed = true;
    }
  };
  do {
    changed = false;
    for (std::size_t len = 0; len <= n; ++len) {
      for (std::size_t i = 0; i + len <= n; ++i) {
        const std::size_t j = i + len;
        if (len == 0) {
          for (const auto& p : g.epsilons) offer(p.nt, i, i, p.weight);
          for (const auto& p : g.lookaheads) {
            for (std::size_t e = i; e <= n; ++e) {
              if (find(p.a, i, e)) {
                offer(p.nt, i, i, 0);
                break;
              }
            }
          }
        }
        if (len == 1) {
          for (const auto& p : g.tokens) {
            if (input[i] == p.terminal) offer(p.nt, i, j, p.weight);
          }
        }
        for (const auto& p : g.concatenations) {
          for (std::size_t mid = i; mid <= j; ++mid) {
            const auto* wa = find(p.a, i, mid);
            const auto* wb = wa ? find(p.b, mid, j) : nullptr;
            if (wb) offer(p.nt, i, j, p.weight + *wa + *wb);
          }
        }
        for (const auto& p : g.conjunctions) {
          if (find(p.a, i, j) && find(p.b, i, j)) offer(p.nt, i, j, 0);
        }
      }
    }
  } while (changed);
  return chart;
}

std::set<std::string> oracle_tree_not_rejects_all(const TreeAutomatonInstance& t) {
  std::set<std::string> out(t.accepting.begin(), t.accepting.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& h : t.hyperedges) {
      if (out.count(h.head)) continue;
      bool all = std::all_of(h.children.begin(), h.children.end(),
                             [&](const std::string& c) { return out.count(c) > 0; });
      if (all) {
        out.insert(h.head);
        changed = true;
      }
    }
  }
  return out;
}

}  // namespace fpop::corpus
