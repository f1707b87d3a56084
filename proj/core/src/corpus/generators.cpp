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


#include "fpop/corpus/generators.hpp"

#include <random>
#include <set>
#include <tuple>

namespace fpop::corpus {

namespace {

// Modulo reduction keeps streams identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  std::uint64_t upto(std::uint64_t hi) { return gen_() % (hi + 1); }
  bool chance(unsigned percent) { return gen_() % 100 < percent; }

 private:
  std::mt19937_64 gen_;
};

std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

GraphInstance gen_random_graph(std::uint64_t seed, std::size_t n, std::size_t m, std::uint64_t max_weight) {
  Rng rng(seed);
  GraphInstance g;
  g.vertices = names("v", n);
  g.start = g.vertices.at(0);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t a = rng.below(n);
    std::size_t b = rng.below(n);
    std::uint64_t w = rng.upto(max_weight);
    if (!seen.emplace(a, b).second) continue;
    g.edges.push_back({g.vertices[a], g.vertices[b], w});
  }
  return g;
}

GraphInstance gen_layered_graph(std::size_t layers, std::size_t width) {
  GraphInstance g;
  g.start = "s";
  g.vertices.push_back(g.start);
  auto vertex = [](std::size_t layer, std::size_t j) {
    return "L" + std::to_string(layer) + "_" + std::to_string(j);
  };
  for (std::size_t l = 0; l < layers; ++l) {
    for (std::size_t j = 0; j < width; ++j) g.vertices.push_back(vertex(l, j));
  }
  for (std::size_t j = 0; j < width; ++j) g.edges.push_back({g.start, vertex(0, j), width - j});
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    for (std::size_t j = 0; j < width; ++j) {
      for (std::size_t t = 0; t < width; ++t) g.edges.push_back({vertex(l, j), vertex(l + 1, t), width - j});
    }
  }
  return g;
}

DfaInstance gen_random_dfa(std::uint64_t seed, std::size_t n, std::size_t k) {
  Rng rng(seed);
  DfaInstance d;
  d.states = names("q", n);
  for (std::size_t c = 0; c < k; ++c) d.alphabet.push_back(std::string(1, static_cast<char>('a' + c)));
  d.start = d.states.at(0);
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(k, n));
  std::vector<bool> accept(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && rng.chance(25)) {
      std::size_t j = rng.below(i);
      rows[i] = rows[j];
      accept[i] = accept[j];
      continue;
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (rng.chance(90)) rows[i][c] = rng.below(n);
    }
    accept[i] = rng.chance(35);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (accept[i]) d.accepting.insert(d.states[i]);
    for (std::size_t c = 0; c < k; ++c) {
      if (rows[i][c] < n) d.edges.push_back({d.alphabet[c], d.states[i], d.states[rows[i][c]]});
    }
  }
  return d;
}

std::pair<CnfGrammar, std::vector<std::string>> gen_random_grammar(std::uint64_t seed,
                                                                   const GrammarSizes& sizes) {
  Rng rng(seed);
  CnfGrammar g;
  g.weighted = sizes.weighted;
  g.nonterminals = names("N", sizes.nonterminals);
  for (std::size_t t = 0; t < sizes.terminals; ++t) g.terminals.push_back(std::string(1, static_cast<char>('a' + t)));
  auto nt = [&] { return g.nonterminals[rng.below(g.nonterminals.size())]; };
  auto weight = [&] { return sizes.weighted ? rng.upto(sizes.max_weight) : 0; };
  for (const auto& t : g.terminals) g.tokens.push_back({nt(), t, weight()});
  for (std::size_t i = 0; i < sizes.nonterminals / 2; ++i) {
    g.tokens.push_back({nt(), g.terminals[rng.below(g.terminals.size())], weight()});
  }
  for (std::size_t i = 0; i < sizes.concatenations; ++i) {
    std::string head = nt();
    std::string a = nt();
    std::string b = nt();
    g.concatenations.push_back({head, a, b, weight()});
  }
  for (std::size_t i = 0; i < sizes.epsilons; ++i) g.epsilons.push_back({nt(), weight()});
  if (!sizes.weighted) {
    for (std::size_t i = 0; i < sizes.lookaheads; ++i) {
      std::string head = nt();
      g.lookaheads.push_back({head, nt()});
    }
    for (std::size_t i = 0; i < sizes.conjunctions; ++i) {
      std::string head = nt();
      std::string a = nt();
      g.conjunctions.push_back({head, a, nt()});
    }
  }
  std::vector<std::string> input;
  for (std::size_t i = 0; i < sizes.input_length; ++i) input.push_back(g.terminals[rng.below(g.terminals.size())]);
  return {std::move(g), std::move(input)};
}

TreeAutomatonInstance gen_random_tree_automaton(std::uint64_t seed, std::size_t states,
                                                std::size_t hyperedges) {
  Rng rng(seed);
  TreeAutomatonInstance t;
  t.states = names("t", states);
  for (const auto& s : t.states) {
    if (rng.chance(15)) t.accepting.insert(s);
  }
  for (std::size_t i = 0; i < hyperedges; ++i) {
    HyperEdge h;
    h.head = t.states[rng.below(states)];
    h.constructor = "f" + std::to_string(rng.below(4));
    std::size_t arity = rng.chance(10) ? 0 : 1 + rng.below(3);
    for (std::size_t c = 0; c < arity; ++c) h.children.push_back(t.states[rng.below(states)]);
    t.hyperedges.push_back(std::move(h));
  }
  return t;
}

}  // namespace fpop::corpus
