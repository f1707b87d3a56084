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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fpop/corpus/generators.hpp"
#include "fpop/corpus/instances.hpp"
#include "fpop/corpus/manifest.hpp"
#include "fpop/corpus/oracles.hpp"
#include "fpop/parser.hpp"
#include "lattice_support.hpp"
#include "support.hpp"

namespace fpop {
namespace {

using namespace corpus;
using testing::compile_corpus;
using testing::make_solver;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Criterion 1 and 2 share these instances.
std::vector<GraphInstance> random_graphs() {
  std::vector<GraphInstance> out;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::size_t n = 2 + (seed * 37) % 199;
    std::size_t m = std::min<std::size_t>(2000, n * (1 + seed % 10));
    out.push_back(gen_random_graph(seed, n, m, 100));
  }
  return out;
}

std::size_t count_rules(const std::string& path) {
  return parse_program(read_file(path)).program.all<ast::RuleDecl>().size();
}

Outcome two_rule_graph_distance() {
  auto c = compile_corpus("graph_distance.fpop");
  std::size_t rules = count_rules(testing::corpus_path("graph_distance.fpop"));
  auto graphs = random_graphs();
  auto t0 = Clock::now();
  std::size_t matched = 0;
  for (const auto& g : graphs) {
    auto s = make_solver(c, g.facts());
    s->solve();
    if (read_distances(*s, g) == oracle_shortest_paths(g)) ++matched;
  }
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = rules == 2 && matched == graphs.size() && secs < 5.0;
  o.detail = std::to_string(rules) + " rules; " + std::to_string(matched) + "/" + std::to_string(graphs.size()) +
             " graphs equal Bellman-Ford; " + std::to_string(secs) + " s (limit 5 s)";
  return o;
}

Outcome dijkstra_bound() {
  auto c = compile_corpus("graph_distance.fpop");
  std::size_t within = 0;
  auto graphs = random_graphs();
  for (const auto& g : graphs) {
    auto s = make_solver(c, g.facts());
    SolverStats st = s->solve(1);
    std::size_t reachable = 0;
    for (const auto& [v, d] : oracle_shortest_paths(g)) reachable += d.is_infinite() ? 0 : 1;
    if (st.strict_updates_of("distTo") == reachable && st.firings_of("addDist") <= g.edges.size() + 1) ++within;
  }
  GraphInstance layered = gen_layered_graph(10, 10);
  auto pri = make_solver(c, layered.facts(), {Schedule::Priority, 0});
  auto fifo = make_solver(c, layered.facts(), {Schedule::Fifo, 0});
  std::uint64_t p = pri->solve(1).strict_updates_of("distTo");
  std::uint64_t f = fifo->solve(1).strict_updates_of("distTo");
  bool same = pri->canonical_dump() == fifo->canonical_dump() &&
              read_distances(*pri, layered) == oracle_shortest_paths(layered);
  Outcome o;
  o.pass = within == graphs.size() && f >= 2 * p && same;
  o.detail = std::to_string(within) + "/" + std::to_string(graphs.size()) +
             " graphs within the settled-once bound; layered 10x10: fifo " + std::to_string(f) +
             " vs priority " + std::to_string(p) + " strict updates (need >= 2x), facts " +
             (same ? "identical" : "DIFFER");
  return o;
}

Outcome dfa_minimization() {
  auto c = compile_corpus("dfa_minimization.fpop");
  auto t0 = Clock::now();
  std::size_t matched = 0;
  const std::size_t total = 100;
  for (std::uint64_t seed = 0; seed < total; ++seed) {
    DfaInstance d = gen_random_dfa(seed, 2 + seed % 39, 1 + seed % 3);
    auto s = make_solver(c, d.facts());
    s->solve();
    if (read_minimized_partition(*s) == oracle_minimize(d)) ++matched;
  }
  double secs = seconds_since(t0);
  return {matched == total && secs < 10.0, std::to_string(matched) + "/" + std::to_string(total) +
                                               " DFAs equal table filling; " + std::to_string(secs) +
                                               " s (limit 10 s)"};
}

Outcome tree_automata() {
  auto c = compile_corpus("tree_automata.fpop");
  std::size_t matched = 0;
  const std::size_t total = 50;
  for (std::uint64_t seed = 0; seed < total; ++seed) {
    TreeAutomatonInstance t = gen_random_tree_automaton(seed, 2 + seed % 19, 1 + (seed * 13) % 60);
    auto s = make_solver(c, t.facts());
    s->solve();
    if (read_unary(*s, "notRejectsAll") == oracle_tree_not_rejects_all(t)) ++matched;
  }
  return {matched == total, std::to_string(matched) + "/" + std::to_string(total) + " automata equal saturation"};
}

Outcome parsing() {
  auto plain = compile_corpus("cnf_parse.fpop");
  auto weighted = compile_corpus("cnf_parse_weighted.fpop");
  std::size_t plain_ok = 0;
  std::size_t weighted_ok = 0;
  const std::size_t total = 50;
  for (std::uint64_t seed = 0; seed < total; ++seed) {
    GrammarSizes sz;
    sz.nonterminals = 1 + seed % 10;
    sz.terminals = 1 + seed % 3;
    sz.concatenations = 2 + seed % 15;
    sz.epsilons = seed % 2;
    sz.lookaheads = seed % 3 == 0 ? 1 : 0;
    sz.conjunctions = seed % 4 == 0 ? 1 : 0;
    sz.input_length = seed % 13;
    auto [g, input] = gen_random_grammar(seed, sz);
    auto s = make_solver(plain, g.facts(input));
    s->solve();
    if (read_chart(*s, false) == oracle_cyk(g, input)) ++plain_ok;

    GrammarSizes wz = sz;
    wz.weighted = true;
    wz.input_length = seed % 9;
    auto [wg, winput] = gen_random_grammar(seed + 1000, wz);
    auto w = make_solver(weighted, wg.facts(winput));
    w->solve();
    if (read_chart(*w, true) == oracle_cyk(wg, winput)) ++weighted_ok;
  }
  // Hand-built charts, each also confirmed by the oracle.
  auto chart_of = [&](const char* fixture) {
    auto s = make_solver(plain, parse_fact_file(testing::corpus_path(fixture), *plain.program));
    s->solve();
    return read_chart(*s, false);
  };
  ParseChart look = {{{"A", 0, 1}, 0}, {{"B", 1, 2}, 0}, {{"L", 0, 0}, 0}, {{"S", 0, 2}, 0}, {{"X", 0, 2}, 0}};
  ParseChart conj = {{{"A", 0, 1}, 0}, {{"B", 1, 2}, 0}, {{"C", 0, 1}, 0}, {{"D", 0, 1}, 0}, {{"S", 0, 2}, 0}};
  CnfGrammar lg;
  lg.tokens = {{"A", "a", 0}, {"B", "b", 0}};
  lg.lookaheads = {{"L", "A"}};
  lg.concatenations = {{"S", "L", "X", 0}, {"X", "A", "B", 0}};
  CnfGrammar cg;
  cg.tokens = {{"A", "a", 0}, {"D", "a", 0}, {"B", "b", 0}};
  cg.conjunctions = {{"C", "A", "D"}, {"N", "A", "B"}};
  cg.concatenations = {{"S", "C", "B", 0}};
  bool fixtures = chart_of("fixtures/cnf_lookahead.jsonl") == look && oracle_cyk(lg, {"a", "b"}) == look &&
                  chart_of("fixtures/cnf_and.jsonl") == conj && oracle_cyk(cg, {"a", "b"}) == conj;
  return {plain_ok == total && weighted_ok == total && fixtures,
          std::to_string(plain_ok) + "/" + std::to_string(total) + " charts equal CYK; " +
              std::to_string(weighted_ok) + "/" + std::to_string(total) +
              " weighted charts equal min-weight derivations; lookahead/conjunction fixtures " +
              (fixtures ? "match" : "DIFFER")};
}

struct CorpusRun {
  std::string dump;
  std::uint64_t audit = 0;
};

CorpusRun run_entry(const CompiledProgram& c, const std::vector<FactInput>& facts,
                    const std::map<std::string, Value>& consts, SolverOptions opts, std::size_t workers,
                    bool naive = false) {
  auto s = make_solver(c, facts, opts, consts);
  if (naive) {
    s->solve_naive();
  } else {
    s->solve(workers);
  }
  return {s->canonical_dump(), s->audit()};
}

struct LoadedEntry {
  CorpusEntry entry;
  CompiledProgram program;
  std::vector<FactInput> facts;
  std::map<std::string, Value> consts;
};

std::vector<LoadedEntry> load_corpus() {
  std::vector<LoadedEntry> out;
  for (const auto& e : load_manifest(FPOP_CORPUS_DIR)) {
    LoadedEntry l{e, testing::compile_or_throw(read_file(e.program)), {}, {}};
    for (const auto& f : e.facts) {
      auto more = parse_fact_file(f, *l.program.program);
      l.facts.insert(l.facts.end(), more.begin(), more.end());
    }
    for (const auto& [k, v] : e.consts) {
      l.consts[k] = value_from_text(v, l.program.program->consts[*l.program.program->const_index(k)].type);
    }
    out.push_back(std::move(l));
  }
  return out;
}

// Criterion 10 accumulates over every corpus solve in criteria 6 and 8.
std::uint64_t g_audit_solves = 0;
std::uint64_t g_audit_failures = 0;

void record_audit(const CorpusRun& r) {
  ++g_audit_solves;
  if (r.audit != 0) ++g_audit_failures;
}

Outcome determinism(const std::vector<LoadedEntry>& corpus) {
  std::size_t stable = 0;
  std::size_t runs = 0;
  std::string bad;
  for (const auto& l : corpus) {
    CorpusRun ref = run_entry(l.program, l.facts, l.consts, {Schedule::Priority, 0}, 1);
    record_audit(ref);
    bool same = true;
    std::vector<SolverOptions> schedules = {{Schedule::Priority, 0}, {Schedule::Fifo, 0}};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) schedules.push_back({Schedule::Random, seed});
    for (std::size_t w : {1, 2, 8}) {
      for (const auto& opts : schedules) {
        CorpusRun r = run_entry(l.program, l.facts, l.consts, opts, w);
        record_audit(r);
        ++runs;
        if (r.dump != ref.dump) same = false;
      }
    }
    if (same) {
      ++stable;
    } else {
      bad += " " + l.entry.name;
    }
  }
  return {stable == corpus.size(), std::to_string(stable) + "/" + std::to_string(corpus.size()) +
                                       " corpus instances byte-identical over " + std::to_string(runs) +
                                       " runs (workers 1/2/8 x priority/fifo/10 random seeds)" +
                                       (bad.empty() ? "" : "; differ:" + bad)};
}

Outcome incremental_reuse() {
  auto c = compile_corpus("graph_distance.fpop");
  GraphInstance g = gen_random_graph(2024, 200, 1800, 100);
  GraphInstance extra = gen_random_graph(4048, 200, 400, 100);
  std::set<std::pair<std::string, std::string>> have;
  for (const auto& e : g.edges) have.emplace(e.from, e.to);
  std::vector<FactInput> added;
  GraphInstance all = g;
  for (const auto& e : extra.edges) {
    if (added.size() >= g.edges.size() / 10) break;
    if (!have.emplace(e.from, e.to).second) continue;
    added.push_back({"edge", {Value::symbol(e.from), Value::symbol(e.to), Value::nat(e.weight)}});
    all.edges.push_back(e);
  }
  auto inc = make_solver(c, g.facts());
  inc->solve();
  SolverStats delta = inc->resolve_incremental(added);
  auto fresh = make_solver(c, all.facts());
  SolverStats scratch = fresh->solve();
  bool same = inc->canonical_dump() == fresh->canonical_dump();
  return {same && delta.total_strict_updates() <= scratch.total_strict_updates(),
          "added " + std::to_string(added.size()) + " edges to " + std::to_string(g.edges.size()) + "; dumps " +
              (same ? "identical" : "DIFFER") + "; incremental " + std::to_string(delta.total_strict_updates()) +
              " vs from-scratch " + std::to_string(scratch.total_strict_updates()) + " strict updates"};
}

Outcome naive_agreement(const std::vector<LoadedEntry>& corpus) {
  std::size_t agree = 0;
  for (const auto& l : corpus) {
    CorpusRun semi = run_entry(l.program, l.facts, l.consts, {}, 1);
    CorpusRun naive = run_entry(l.program, l.facts, l.consts, {}, 1, true);
    record_audit(semi);
    record_audit(naive);
    if (semi.dump == naive.dump) ++agree;
  }
  auto c = compile_corpus("graph_distance.fpop");
  GraphInstance g = gen_random_graph(77, 200, 1200, 100);
  auto semi = make_solver(c, g.facts());
  std::uint64_t semi_firings = semi->solve().total_firings();
  auto naive = make_solver(c, g.facts());
  std::uint64_t naive_firings = naive->solve_naive().total_firings();
  bool same = semi->canonical_dump() == naive->canonical_dump();
  return {agree == corpus.size() && same && semi_firings < naive_firings,
          std::to_string(agree) + "/" + std::to_string(corpus.size()) +
              " corpus instances agree; 200-vertex graph: semi-naive " + std::to_string(semi_firings) +
              " vs naive " + std::to_string(naive_firings) + " rule firings"};
}

Outcome lattice_laws() {
  std::size_t lattices = 0;
  std::size_t failures = 0;
  for (const auto& nl : testing::builtin_lattices()) {
    const Lattice& l = *nl.lattice;
    ++lattices;
    std::mt19937_64 rng(1234 + lattices);
    for (int i = 0; i < 10000; ++i) {
      Value a = testing::random_value(l.carrier(), rng);
      Value b = testing::random_value(l.carrier(), rng);
      Value c = testing::random_value(l.carrier(), rng);
      bool ok = l.join(a, b) == l.join(b, a) && l.join(l.join(a, b), c) == l.join(a, l.join(b, c)) &&
                l.join(a, a) == a && l.leq(a, b) == (l.join(a, b) == b) && l.join(l.bottom(), a) == a;
      if (!ok) ++failures;
    }
  }
  std::size_t partition_checks = 0;
  std::size_t partition_failures = 0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<Value> universe;
    for (int i = 0; i < n; ++i) universe.push_back(Value::integer(i));
    auto parts = testing::all_partitions(n);
    auto to_value = [&](const std::vector<int>& ids) {
      std::vector<std::vector<Value>> blocks(n);
      for (int i = 0; i < n; ++i) blocks[ids[i]].push_back(universe[i]);
      return Value::partition(std::move(blocks));
    };
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        ++partition_checks;
        Value j = partition_join(to_value(a), to_value(b));
        if (!testing::same_partition(testing::block_ids(j, universe), testing::brute_force_join(a, b))) {
          ++partition_failures;
        }
      }
    }
  }
  return {failures == 0 && partition_failures == 0,
          std::to_string(lattices) + " lattices x 10000 triples, " + std::to_string(failures) +
              " law violations; partition join vs enumeration on " + std::to_string(partition_checks) +
              " pairs (universes <= 5), " + std::to_string(partition_failures) + " mismatches"};
}

Outcome fixpoint_audit() {
  return {g_audit_solves > 0 && g_audit_failures == 0,
          std::to_string(g_audit_solves) + " corpus solves audited, " + std::to_string(g_audit_failures) +
              " with strict updates left"};
}

}  // namespace
}  // namespace fpop

int main() {
  using fpop::Outcome;
  auto t0 = fpop::Clock::now();
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  };
  auto corpus = fpop::load_corpus();
  report(1, "two-rule graph distance", fpop::two_rule_graph_distance);
  report(2, "priority scheduling bound", fpop::dijkstra_bound);
  report(3, "DFA minimization", fpop::dfa_minimization);
  report(4, "tree automata", fpop::tree_automata);
  report(5, "parsing", fpop::parsing);
  report(6, "determinism", [&] { return fpop::determinism(corpus); });
  report(7, "incremental reuse", fpop::incremental_reuse);
  report(8, "semi-naive vs naive", [&] { return fpop::naive_agreement(corpus); });
  report(9, "lattice laws", fpop::lattice_laws);
  report(10, "fixpoint audit", fpop::fixpoint_audit);
  std::printf("%d/10 criteria passed in %.2f s\n", 10 - failed, fpop::seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
