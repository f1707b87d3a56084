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
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fpop/solver.hpp"
#include "fpop/value.hpp"

namespace fpop::corpus {

struct WeightedEdge {
  std::string from;
  std::string to;
  std::uint64_t weight = 0;
};

struct GraphInstance {
  std::vector<std::string> vertices;
  std::vector<WeightedEdge> edges;
  std::string start;

  /// `edge` facts plus `startVertex start`; `with_start = false` omits the
  /// latter for the const-bound program.
  std::vector<FactInput> facts(bool with_start = true) const;
};

struct DfaEdge {
  std::string symbol;
  std::string from;
  std::string to;
};

/// Possibly partial; `completed()` routes missing transitions to a fresh
/// non-accepting sink.
struct DfaInstance {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<DfaEdge> edges;
  std::set<std::string> accepting;
  std::string start;

  DfaInstance completed() const;
  /// Facts of the completed automaton, including `notAccepts`.
  std::vector<FactInput> facts() const;
};

struct HyperEdge {
  std::string head;
  std::string constructor;
  std::vector<std::string> children;
};

struct TreeAutomatonInstance {
  std::vector<std::string> states;
  std::vector<HyperEdge> hyperedges;
  std::set<std::string> accepting;

  std::vector<FactInput> facts() const;
};

struct TokenProduction {
  std::string nt;
  std::string terminal;
  std::uint64_t weight = 0;
};

struct ConcatProduction {
  std::string nt, a, b;
  std::uint64_t weight = 0;
};

struct EpsilonProduction {
  std::string nt;
  std::uint64_t weight = 0;
};

struct LookaheadProduction {
  std::string nt, a;
};

struct ConjunctionProduction {
  std::string nt, a, b;
};

/// Weights are read only when `weighted`; a weighted grammar has no
/// lookahead or conjunction productions.
struct CnfGrammar {
  std::vector<std::string> nonterminals;
  std::vector<std::string> terminals;
  std::vector<TokenProduction> tokens;
  std::vector<ConcatProduction> concatenations;
  std::vector<EpsilonProduction> epsilons;
  std::vector<LookaheadProduction> lookaheads;
  std::vector<ConjunctionProduction> conjunctions;
  bool weighted = false;

  /// Productions, `token i c` for the input and `position i` for 0..n.
  std::vector<FactInput> facts(const std::vector<std::string>& input) const;
};

/// (symbol, i, j) -> least weight; every weight is 0 for unweighted charts.
using ParseChart = std::map<std::tuple<std::string, std::size_t, std::size_t>, std::uint64_t>;

/// Shortest distances for every vertex of `g`, infinity when unreached.
std::map<std::string, ExtNat> read_distances(const Solver& s, const GraphInstance& g);

/// Symbols `x` with `relation x` present.
std::set<std::string> read_unary(const Solver& s, std::string_view relation);

/// Partition of the reachable live states by the engine's `distinguished`
/// pairs.
Value read_minimized_partition(const Solver& s);

ParseChart read_chart(const Solver& s, bool weighted);

std::string to_jsonl(const std::vector<FactInput>& facts);

}  // namespace fpop::corpus
