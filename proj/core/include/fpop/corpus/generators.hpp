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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fpop/corpus/instances.hpp"

namespace fpop::corpus {

/// `n` vertices v0..v{n-1} starting at v0; at most `m` distinct edges with
/// weights in [0, max_weight].
GraphInstance gen_random_graph(std::uint64_t seed, std::size_t n, std::size_t m,
                               std::uint64_t max_weight);

/// Source plus `layers` layers of `width` vertices, fully connected between
/// consecutive layers. Weights make later edges in each layer cheaper, so
/// first-in first-out processing settles every vertex several times.
GraphInstance gen_layered_graph(std::size_t layers, std::size_t width);

/// `n` states over an alphabet of `k` letters. Some states copy an earlier
/// state's row so that equivalent states occur; some transitions are left
/// undefined.
DfaInstance gen_random_dfa(std::uint64_t seed, std::size_t n, std::size_t k);

struct GrammarSizes {
  std::size_t nonterminals = 6;
  std::size_t terminals = 2;
  std::size_t concatenations = 10;
  std::size_t epsilons = 1;
  std::size_t lookaheads = 0;
  std::size_t conjunctions = 0;
  std::size_t input_length = 8;
  bool weighted = false;
  std::uint64_t max_weight = 5;
};

/// Grammar over nonterminals N0.. (N0 is the start) and terminals a, b, ...;
/// every terminal has at least one token production.
std::pair<CnfGrammar, std::vector<std::string>> gen_random_grammar(std::uint64_t seed,
                                                                   const GrammarSizes& sizes);

TreeAutomatonInstance gen_random_tree_automaton(std::uint64_t seed, std::size_t states,
                                                std::size_t hyperedges);

}  // namespace fpop::corpus
