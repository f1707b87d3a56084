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

#include "fpop/corpus/generators.hpp"
#include "fpop/corpus/instances.hpp"
#include "fpop/corpus/oracles.hpp"
#include "random_program.hpp"
#include "support.hpp"

namespace fpop {
namespace {

using testing::compile_corpus;
using testing::compile_or_throw;
using testing::make_solver;
using testing::nat;
using testing::sym;

std::vector<FactInput> small_graph() {
  return {{"startVertex", {sym("a")}},
          {"edge", {sym("a"), sym("b"), nat(1)}},
          {"edge", {sym("b"), sym("c"), nat(2)}},
          {"edge", {sym("a"), sym("c"), nat(5)}}};
}

std::vector<Tuple> dist_rows(std::initializer_list<std::pair<const char*, std::uint64_t>> rows) {
  std::vector<Tuple> out;
  for (const auto& [v, d] : rows) out.push_back({sym(v), nat(d)});
  return out;
}

TEST(Init, AxiomIsPendingBeforeSolve) {
  auto c = compile_corpus("graph_distance_const.fpop");
  Solver s(c.plan, {{"start", sym("a")}});
  EXPECT_EQ(s.pending(), 1u);
  s.solve();
  EXPECT_EQ(s.query("distTo"), dist_rows({{"a", 0}}));
}

TEST(Init, NoAxiomsMeansEmptyQueue) {
  auto c = compile_corpus("dfa_minimization.fpop");
  Solver s(c.plan, {});
  EXPECT_EQ(s.pending(), 0u);
  EXPECT_FALSE(s.step());
}

TEST(Init, MissingConstIsNamed) {
  auto c = compile_corpus("graph_distance_const.fpop");
  try {
    Solver s(c.plan, {});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("start"), std::string::npos);
  }
  EXPECT_THROW(Solver(c.plan, {{"start", nat(3)}}), Error);
}

TEST(InsertFact, SubsumedFactsAreRejected) {
  auto c = compile_corpus("graph_distance.fpop");
  Solver s(c.plan, {});
  std::vector<Value> e = {sym("a"), sym("b"), nat(4)};
  EXPECT_TRUE(s.insert_fact("edge", e));
  EXPECT_FALSE(s.insert_fact("edge", e));
  std::vector<Value> d3 = {sym("a"), nat(3)};
  std::vector<Value> d9 = {sym("a"), nat(9)};
  EXPECT_TRUE(s.insert_fact("distTo", d3));
  s.solve();
  EXPECT_FALSE(s.insert_fact("distTo", d9));
}

TEST(InsertFact, RejectsMalformedFacts) {
  auto c = compile_corpus("graph_distance.fpop");
  Solver s(c.plan, {});
  std::vector<Value> two = {sym("a"), sym("b")};
  std::vector<Value> bad = {sym("a"), sym("b"), sym("c")};
  EXPECT_THROW(s.insert_fact("nope", two), Error);
  EXPECT_THROW(s.insert_fact("edge", two), Error);
  EXPECT_THROW(s.insert_fact("edge", bad), Error);
}

TEST(Solve, ShortestDistances) {
  auto c = compile_corpus("graph_distance.fpop");
  auto s = make_solver(c, small_graph());
  SolverStats st = s->solve();
  EXPECT_EQ(s->query("distTo"), dist_rows({{"a", 0}, {"b", 1}, {"c", 3}}));
  EXPECT_EQ(st.popped, st.discarded + st.fired);
  EXPECT_EQ(s->audit(), 0u);
}

TEST(Solve, DeadStateDetection) {
  auto c = compile_corpus("dfa_minimization.fpop");
  auto s = make_solver(c, {{"accepts", {sym("s")}}, {"edge", {sym("c"), sym("q"), sym("s")}}});
  s->solve();
  EXPECT_EQ(corpus::read_unary(*s, "notRejectsAll"), (std::set<std::string>{"q", "s"}));
}

TEST(Step, ProcessesOneTaskAtATime) {
  auto c = compile_corpus("graph_distance_const.fpop");
  Solver s(c.plan, {{"start", sym("a")}});
  EXPECT_TRUE(s.step());
  EXPECT_EQ(s.db().size(*c.program->relation_index("distTo")), 1u);
  EXPECT_FALSE(s.step());
}

TEST(Step, RepeatedStepsMatchSolve) {
  auto c = compile_corpus("graph_distance.fpop");
  auto g = corpus::gen_random_graph(3, 30, 90, 20);
  auto a = make_solver(c, g.facts());
  while (a->step()) {
  }
  auto b = make_solver(c, g.facts());
  b->solve();
  EXPECT_EQ(a->canonical_dump(), b->canonical_dump());
}

TEST(Query, PatternsSelectFacts) {
  auto c = compile_corpus("graph_distance.fpop");
  auto s = make_solver(c, small_graph());
  s->solve();
  std::vector<std::optional<Value>> key = {sym("c")};
  EXPECT_EQ(s->query("distTo", key), dist_rows({{"c", 3}}));
  std::vector<std::optional<Value>> any = {std::nullopt};
  EXPECT_EQ(s->query("distTo", any).size(), 3u);
  std::vector<std::optional<Value>> full = {std::nullopt, nat(1)};
  EXPECT_EQ(s->query("distTo", full), dist_rows({{"b", 1}}));
  EXPECT_TRUE(s->query("edge", std::vector<std::optional<Value>>{sym("z"), std::nullopt}).empty());
}

TEST(Query, EmptyRelation) {
  auto c = compile_corpus("graph_distance.fpop");
  Solver s(c.plan, {});
  s.solve();
  EXPECT_TRUE(s.query("distTo").empty());
}

TEST(Incremental, NewEdgeUpdatesOnlyItsTarget) {
  auto c = compile_corpus("graph_distance.fpop");
  auto s = make_solver(c, small_graph());
  s->solve();
  std::vector<FactInput> more = {{"edge", {sym("c"), sym("d"), nat(1)}}};
  SolverStats st = s->resolve_incremental(more);
  EXPECT_EQ(st.strict_updates_of("distTo"), 1u);
  std::vector<std::optional<Value>> d = {sym("d")};
  EXPECT_EQ(s->query("distTo", d), dist_rows({{"d", 4}}));
}

TEST(Incremental, ReinsertIsFree) {
  auto c = compile_corpus("graph_distance.fpop");
  auto s = make_solver(c, small_graph());
  s->solve();
  std::vector<FactInput> again = {small_graph()[1]};
  SolverStats st = s->resolve_incremental(again);
  EXPECT_EQ(st.popped, 0u);
  EXPECT_EQ(st.total_strict_updates(), 0u);
}

TEST(Incremental, ShortcutPropagatesDownstream) {
  auto c = compile_corpus("graph_distance.fpop");
  auto facts = small_graph();
  facts.push_back({"edge", {sym("c"), sym("d"), nat(1)}});
  auto s = make_solver(c, facts);
  s->solve();
  std::vector<FactInput> shortcut = {{"edge", {sym("a"), sym("c"), nat(1)}}};
  s->resolve_incremental(shortcut);
  EXPECT_EQ(s->query("distTo"), dist_rows({{"a", 0}, {"b", 1}, {"c", 1}, {"d", 2}}));
}

TEST(Incremental, MatchesFromScratchOnRandomGraphs) {
  auto c = compile_corpus("graph_distance.fpop");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = corpus::gen_random_graph(seed, 40, 160, 30);
    auto all = g.facts();
    std::vector<FactInput> first(all.begin(), all.begin() + static_cast<long>(all.size() * 2 / 3));
    std::vector<FactInput> rest(all.begin() + static_cast<long>(first.size()), all.end());
    auto inc = make_solver(c, first);
    inc->solve();
    inc->resolve_incremental(rest);
    auto fresh = make_solver(c, all);
    fresh->solve();
    ASSERT_EQ(inc->canonical_dump(), fresh->canonical_dump()) << seed;
  }
}

TEST(CanonicalDump, EmptyStateHasHeadersOnly) {
  auto c = compile_corpus("graph_distance.fpop");
  Solver s(c.plan, {});
  EXPECT_EQ(s.canonical_dump(), "# edge 0\n# distTo 0\n# startVertex 0\n");
}

TEST(CanonicalDump, IndependentOfWorkersAndSchedule) {
  auto c = compile_corpus("graph_distance.fpop");
  auto g = corpus::gen_random_graph(11, 80, 400, 50);
  auto ref = make_solver(c, g.facts());
  ref->solve(1);
  const std::string want = ref->canonical_dump();
  for (std::size_t w : {2, 8}) {
    auto s = make_solver(c, g.facts());
    s->solve(w);
    EXPECT_EQ(s->canonical_dump(), want) << w;
    EXPECT_TRUE(s->db().indexes_consistent());
  }
  for (Schedule sch : {Schedule::Fifo, Schedule::Random}) {
    auto s = make_solver(c, g.facts(), {sch, 7});
    s->solve();
    EXPECT_EQ(s->canonical_dump(), want);
  }
}

TEST(Stats, PoppedIsDiscardedPlusFired) {
  auto c = compile_corpus("graph_distance.fpop");
  for (std::size_t w : {1, 4}) {
    auto s = make_solver(c, corpus::gen_random_graph(2, 60, 300, 9).facts());
    SolverStats st = s->solve(w);
    EXPECT_EQ(st.popped, st.discarded + st.fired);
    EXPECT_EQ(st.fired, st.total_strict_updates());
  }
}

TEST(Scheduling, PriorityOrderSettlesEachVertexOnce) {
  auto c = compile_corpus("graph_distance.fpop");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = corpus::gen_random_graph(seed, 60, 240, 100);
    auto s = make_solver(c, g.facts());
    SolverStats st = s->solve();
    std::size_t reachable = 0;
    for (const auto& [v, d] : corpus::oracle_shortest_paths(g)) reachable += d.is_infinite() ? 0 : 1;
    EXPECT_EQ(st.strict_updates_of("distTo"), reachable) << seed;
    EXPECT_LE(st.firings_of("addDist"), g.edges.size() + 1) << seed;
  }
}

TEST(Scheduling, FifoDoesMoreWorkOnLayeredGraph) {
  auto c = compile_corpus("graph_distance.fpop");
  auto g = corpus::gen_layered_graph(10, 10);
  auto pri = make_solver(c, g.facts());
  auto fifo = make_solver(c, g.facts(), {Schedule::Fifo, 0});
  auto a = pri->solve();
  auto b = fifo->solve();
  EXPECT_EQ(pri->canonical_dump(), fifo->canonical_dump());
  EXPECT_GE(b.strict_updates_of("distTo"), 2 * a.strict_updates_of("distTo"));
}

TEST(Naive, AgreesWithSemiNaiveOnRandomPrograms) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto prog = testing::random_program(seed);
    auto c = compile_or_throw(prog.source);
    auto facts = testing::random_facts(prog, seed, 30);
    auto semi = make_solver(c, facts);
    semi->solve();
    auto naive = make_solver(c, facts);
    SolverStats st = naive->solve_naive();
    ASSERT_EQ(semi->canonical_dump(), naive->canonical_dump()) << prog.source;
    EXPECT_GE(st.naive_rounds, 1u);
    EXPECT_EQ(semi->audit(), 0u);
    auto par = make_solver(c, facts);
    par->solve(4);
    ASSERT_EQ(par->canonical_dump(), semi->canonical_dump()) << prog.source;
  }
}

TEST(Monotonicity, MoreEdgesNeverWorsenDistances) {
  auto c = compile_corpus("graph_distance.fpop");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = corpus::gen_random_graph(seed + 100, 50, 200, 40);
    corpus::GraphInstance sub = g;
    sub.edges.resize(g.edges.size() / 2);
    auto small = make_solver(c, sub.facts());
    small->solve();
    auto big = make_solver(c, g.facts());
    big->solve();
    auto ds = corpus::read_distances(*small, g);
    auto db = corpus::read_distances(*big, g);
    for (const auto& [v, d] : ds) EXPECT_LE(db.at(v), d) << v;
  }
}

TEST(Forall, MemberVariantFiresWhenLastChildBecomesLive) {
  auto c = compile_corpus("tree_automata.fpop");
  auto s = make_solver(c, {{"hyperEdge", {sym("p"), sym("f"), Value::set({sym("x"), sym("y")})}},
                           {"accepts", {sym("x")}}});
  s->solve();
  EXPECT_EQ(corpus::read_unary(*s, "notRejectsAll"), (std::set<std::string>{"x"}));
  std::vector<FactInput> more = {{"accepts", {sym("y")}}};
  s->resolve_incremental(more);
  EXPECT_EQ(corpus::read_unary(*s, "notRejectsAll"), (std::set<std::string>{"p", "x", "y"}));
}

TEST(Forall, EmptyCollectionHoldsVacuously) {
  auto c = compile_corpus("tree_automata.fpop");
  auto s = make_solver(c, {{"hyperEdge", {sym("leaf"), sym("nil"), Value::set({})}}});
  s->solve();
  EXPECT_EQ(corpus::read_unary(*s, "notRejectsAll"), (std::set<std::string>{"leaf"}));
}

TEST(Arithmetic, InfiniteEdgeIsBottomAndDerivesNothing) {
  auto c = compile_or_throw(
      "type V\nlattice D = MinDist\nrelation e _ _ = _: V, V, D\nrelation d _ <= _: V, D\n"
      "rule: d x <= a, e x y = w, a + w <= b --> d y <= b\n");
  auto s = make_solver(c, {{"d", {sym("a"), nat(1)}}, {"e", {sym("a"), sym("b"), Value::infinity()}}});
  s->solve();
  EXPECT_EQ(s->query("d").size(), 1u);
}

}  // namespace
}  // namespace fpop
