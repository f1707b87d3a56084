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


#include "fpop/corpus/instances.hpp"

#include <algorithm>

#include "fpop/partition.hpp"

namespace fpop::corpus {

namespace {

Value sym(const std::string& s) { return Value::symbol(s); }

FactInput fact(std::string relation, std::vector<Value> args) {
  return FactInput{std::move(relation), std::move(args)};
}

}  // namespace

std::vector<FactInput> GraphInstance::facts(bool with_start) const {
  std::vector<FactInput> out;
  if (with_start) out.push_back(fact("startVertex", {sym(start)}));
  for (const auto& e : edges) out.push_back(fact("edge", {sym(e.from), sym(e.to), Value::nat(e.weight)}));
  return out;
}

DfaInstance DfaInstance::completed() const {
  DfaInstance out = *this;
  std::set<std::pair<std::string, std::string>> defined;
  for (const auto& e : edges) defined.emplace(e.symbol, e.from);
  std::string sink = "sink";
  while (std::find(states.begin(), states.end(), sink) != states.end()) sink += "'";
  bool used = false;
  for (const auto& s : states) {
    for (const auto& c : alphabet) {
      if (!defined.count({c, s})) {
        out.edges.push_back({c, s, sink});
        used = true;
      }
    }
  }
  if (used) {
    out.states.push_back(sink);
    for (const auto& c : alphabet) out.edges.push_back({c, sink, sink});
  }
  return out;
}

std::vector<FactInput> DfaInstance::facts() const {
  DfaInstance d = completed();
  std::vector<FactInput> out;
  out.push_back(fact("isStart", {sym(d.start)}));
  for (const auto& e : d.edges) out.push_back(fact("edge", {sym(e.symbol), sym(e.from), sym(e.to)}));
  for (const auto& s : d.states) {
    out.push_back(fact(d.accepting.count(s) ? "accepts" : "notAccepts", {sym(s)}));
  }
  return out;
}

std::vector<FactInput> TreeAutomatonInstance::facts() const {
  std::vector<FactInput> out;
  for (const auto& s : accepting) out.push_back(fact("accepts", {sym(s)}));
  for (const auto& h : hyperedges) {
    std::vector<Value> kids;
    for (const auto& c : h.children) kids.push_back(sym(c));
    out.push_back(fact("hyperEdge", {sym(h.head), sym(h.constructor), Value::set(std::move(kids))}));
  }
  return out;
}

std::vector<FactInput> CnfGrammar::facts(const std::vector<std::string>& input) const {
  std::vector<FactInput> out;
  auto w = [&](std::vector<Value> args, std::uint64_t weight) {
    if (weighted) args.push_back(Value::nat(weight));
    return args;
  };
  for (const auto& p : tokens) out.push_back(fact("tokenProduction", w({sym(p.nt), sym(p.terminal)}, p.weight)));
  for (const auto& p : concatenations) {
    out.push_back(fact("concatenationProduction", w({sym(p.nt), sym(p.a), sym(p.b)}, p.weight)));
  }
  for (const auto& p : epsilons) out.push_back(fact("epsilonProduction", w({sym(p.nt)}, p.weight)));
  for (const auto& p : lookaheads) out.push_back(fact("lookaheadProduction", {sym(p.nt), sym(p.a)}));
  for (const auto& p : conjunctions) out.push_back(fact("andProduction", {sym(p.nt), sym(p.a), sym(p.b)}));
  for (std::size_t i = 0; i < input.size(); ++i) {
    out.push_back(fact("token", {Value::nat(std::uint64_t{i}), sym(input[i])}));
  }
  for (std::size_t i = 0; i <= input.size(); ++i) out.push_back(fact("position", {Value::nat(std::uint64_t{i})}));
  return out;
}

std::map<std::string, ExtNat> read_distances(const Solver& s, const GraphInstance& g) {
  std::map<std::string, ExtNat> out;
  for (const auto& v : g.vertices) out[v] = ExtNat::infinity();
  for (const auto& t : s.query("distTo")) out[t[0].as_symbol().str()] = t[1].as_nat();
  return out;
}

std::set<std::string> read_unary(const Solver& s, std::string_view relation) {
  std::set<std::string> out;
  for (const auto& t : s.query(relation)) out.insert(t[0].as_symbol().str());
  return out;
}

Value read_minimized_partition(const Solver& s) {
  std::set<std::string> reach = read_unary(s, "reaches");
  std::set<std::string> live = read_unary(s, "notRejectsAll");
  std::vector<Value> universe;
  for (const auto& x : reach) {
    if (live.count(x)) universe.push_back(sym(x));
  }
  std::vector<std::pair<Value, Value>> pairs;
  for (const auto& t : s.query("distinguished")) pairs.emplace_back(t[0], t[1]);
  return partition_from_undistinguished_pairs(universe, pairs);
}

ParseChart read_chart(const Solver& s, bool weighted) {
  ParseChart out;
  for (const auto& t : s.query("parse")) {
    auto key = std::make_tuple(t[0].as_symbol().str(), static_cast<std::size_t>(t[1].as_nat().finite()),
                               static_cast<std::size_t>(t[2].as_nat().finite()));
    out[key] = weighted ? t[3].as_nat().finite() : 0;
  }
  return out;
}

std::string to_jsonl(const std::vector<FactInput>& facts) {
  std::string out;
  for (const auto& f : facts) {
    out += fact_to_json(f.relation, f.args);
    out += '\n';
  }
  return out;
}

}  // namespace fpop::corpus
