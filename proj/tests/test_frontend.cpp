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

#include <algorithm>
#include <random>

#include "fpop/format.hpp"
#include "fpop/lexer.hpp"
#include "fpop/parser.hpp"
#include "fpop/program.hpp"
#include "random_program.hpp"
#include "support.hpp"

namespace fpop {
namespace {

using testing::corpus_path;

const char* kGraph = R"(type Vertex
lattice Dist = MinDist
relation edge _ _ = _ : Vertex, Vertex, Dist
relation distTo _ <= _ : Vertex, Dist
const start : Vertex
rule init: distTo start <= 0
rule addDist: distTo v1 <= d1, edge v1 v2 = d2, d1 + d2 <= d --> distTo v2 <= d
order addDist by asc d1
)";

ast::Program parse_ok(std::string_view src) {
  ParseResult r = parse_program(src);
  EXPECT_TRUE(r.ok()) << (r.diagnostics.empty() ? "" : r.diagnostics[0].message);
  return r.program;
}

std::vector<std::string> messages(std::string_view src) {
  ParseResult r = parse_program(src);
  std::vector<std::string> out;
  for (const auto& d : r.diagnostics) out.push_back(d.message);
  if (r.ok()) {
    for (const auto& d : validate(r.program).diagnostics) out.push_back(d.message);
  }
  return out;
}

bool mentions(const std::vector<std::string>& ms, std::string_view needle) {
  return std::any_of(ms.begin(), ms.end(), [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

TEST(Parser, MixfixRelationDeclaration) {
  auto p = parse_ok("type Vertex\nlattice Dist = MinDist\nrelation distTo _ <= _: Vertex, Dist\n");
  auto rels = p.all<ast::RelationDecl>();
  ASSERT_EQ(rels.size(), 1u);
  EXPECT_EQ(rels[0]->name, "distTo");
  EXPECT_EQ(rels[0]->shape, (std::vector<std::string>{"_", "<=", "_"}));
  ASSERT_EQ(rels[0]->args.size(), 2u);
  EXPECT_EQ(rels[0]->args[0].name, "Vertex");
  EXPECT_EQ(rels[0]->args[1].name, "Dist");
}

TEST(Parser, RuleWithAtomsConstraintAndHead) {
  auto p = parse_ok(kGraph);
  auto rules = p.all<ast::RuleDecl>();
  ASSERT_EQ(rules.size(), 2u);
  const ast::RuleDecl& add = *rules[1];
  EXPECT_EQ(add.name, "addDist");
  ASSERT_EQ(add.body.size(), 3u);
  EXPECT_TRUE(std::holds_alternative<ast::Atom>(add.body[0]));
  EXPECT_TRUE(std::holds_alternative<ast::Atom>(add.body[1]));
  EXPECT_TRUE(std::holds_alternative<ast::Constraint>(add.body[2]));
  ASSERT_EQ(add.heads.size(), 1u);
  EXPECT_EQ(add.heads[0].relation, "distTo");
}

TEST(Parser, AxiomWithoutArrow) {
  auto rules = parse_ok(kGraph).all<ast::RuleDecl>();
  EXPECT_TRUE(rules[0]->body.empty());
  ASSERT_EQ(rules[0]->heads.size(), 1u);
  EXPECT_EQ(rules[0]->heads[0].args[0].text, "start");
  EXPECT_EQ(rules[0]->heads[0].args[1].int_value, 0);
}

TEST(Parser, EmptySource) {
  auto p = parse_ok("");
  EXPECT_TRUE(p.decls.empty());
  EXPECT_EQ(format_program(p), "");
}

TEST(Parser, CommentsAndContinuationLines) {
  auto p = parse_ok("type S -- a state\nrelation r: S\nrule: r x\n  --> r x\n");
  EXPECT_EQ(p.all<ast::RuleDecl>().size(), 1u);
}

TEST(Parser, SyntaxErrorsAreReportedAndRecovered) {
  ParseResult r = parse_program("type S\nrelation r: S\nrule r x --> r x\nrelation q: S\n");
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.program.all<ast::RelationDecl>().size(), 2u);
}

TEST(Parser, TemplateMustStartWithPlaceholder) {
  EXPECT_FALSE(parse_program("type S\nrelation r = _: S\n").ok());
  EXPECT_FALSE(parse_program("type S\nrelation r _ _: S\n").ok());
}

TEST(Parser, PairwiseOrderDirectiveDesugars) {
  auto p = parse_ok(
      "type V\nlattice D = MinDist\nrelation d _ <= _: V, D\nrule r: d v <= x --> d v <= x\n"
      "order: a <= b --> r { x = a } <= r { x = b }\n");
  auto orders = p.all<ast::OrderDecl>();
  ASSERT_EQ(orders.size(), 1u);
  EXPECT_EQ(orders[0]->rule, "r");
  EXPECT_EQ(orders[0]->direction, ast::Direction::Asc);
  EXPECT_EQ(orders[0]->priority.text, "x");
}

std::vector<Token> atom_tokens(std::string_view text) {
  auto toks = lex(text).tokens;
  while (!toks.empty() && (toks.back().kind == TokenKind::Eof || toks.back().kind == TokenKind::Newline)) {
    toks.pop_back();
  }
  return toks;
}

ast::RelationDecl decl_of(std::string_view src) { return *parse_ok(src).all<ast::RelationDecl>().at(0); }

TEST(AtomTemplate, ReadsArgumentsBetweenSeparators) {
  auto edge = decl_of("type V\nlattice D = MinDist\nrelation edge _ _ = _: V, V, D\n");
  auto toks = atom_tokens("edge v1 v2 = d2");
  ast::Atom a = parse_atom_by_template(edge, toks);
  ASSERT_EQ(a.args.size(), 3u);
  EXPECT_EQ(a.args[0].text, "v1");
  EXPECT_EQ(a.args[1].text, "v2");
  EXPECT_EQ(a.args[2].text, "d2");

  auto dist = decl_of("type V\nlattice D = MinDist\nrelation distTo _ <= _: V, D\n");
  auto t2 = atom_tokens("distTo start <= 0");
  ast::Atom b = parse_atom_by_template(dist, t2);
  EXPECT_EQ(b.args[0].text, "start");
  EXPECT_EQ(b.args[1].int_value, 0);

  auto reaches = decl_of("type S\nrelation reaches: S\n");
  auto t3 = atom_tokens("reaches s");
  EXPECT_EQ(parse_atom_by_template(reaches, t3).args[0].text, "s");
}

TEST(AtomTemplate, SeparatorMismatchThrows) {
  auto edge = decl_of("type V\nlattice D = MinDist\nrelation edge _ _ = _: V, V, D\n");
  auto toks = atom_tokens("edge v1 v2 <= d2");
  EXPECT_THROW(parse_atom_by_template(edge, toks), ParseError);
}

TEST(Format, RoundTripsCorpusPrograms) {
  for (const char* name : {"graph_distance.fpop", "graph_distance_const.fpop", "dfa_minimization.fpop",
                           "tree_automata.fpop", "cnf_parse.fpop", "cnf_parse_weighted.fpop"}) {
    SCOPED_TRACE(name);
    auto p = parse_ok(read_file(corpus_path(name)));
    std::string text = format_program(p);
    auto q = parse_ok(text);
    EXPECT_EQ(p, q);
    EXPECT_EQ(format_program(q), text);
  }
}

TEST(Format, RoundTripsRandomPrograms) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto p = parse_ok(testing::random_program(seed).source);
    ASSERT_EQ(parse_ok(format_program(p)), p) << testing::random_program(seed).source;
  }
}

TEST(Validate, GraphProgramBindsAtomsThenConstraint) {
  auto r = validate(parse_ok(kGraph));
  ASSERT_TRUE(r.ok());
  const TypedProgram& tp = *r.program;
  const TRule& add = tp.rules[*tp.rule_index("addDist")];
  EXPECT_EQ(add.binding_order, (std::vector<int>{0, 1, 2}));
  const RelationInfo& dist = tp.relations[*tp.relation_index("distTo")];
  EXPECT_EQ(dist.key_arity(), 1u);
  EXPECT_EQ(dist.arity(), 2u);
  EXPECT_FALSE(dist.key_only());
}

TEST(Validate, CorpusProgramsHaveNoDiagnostics) {
  for (const char* name : {"graph_distance.fpop", "graph_distance_const.fpop", "dfa_minimization.fpop",
                           "tree_automata.fpop", "cnf_parse.fpop", "cnf_parse_weighted.fpop"}) {
    SCOPED_TRACE(name);
    EXPECT_TRUE(messages(read_file(corpus_path(name))).empty());
  }
}

TEST(Validate, UnboundHeadVariable) {
  EXPECT_TRUE(mentions(messages("type S\nrelation r: S\nrelation q: S, S\nrule: r x --> q x y\n"),
                       "unbound head variable 'y'"));
}

TEST(Validate, ArityMismatch) {
  auto ms = messages(
      "type V\nlattice D = MinDist\nrelation edge _ _ = _: V, V, D\nrelation p: V\nrule: edge v1 = d --> p v1\n");
  EXPECT_TRUE(mentions(ms, "edge")) << (ms.empty() ? "" : ms[0]);
}

struct BadProgram {
  const char* label;
  const char* source;
  const char* expect;
};

void PrintTo(const BadProgram& p, std::ostream* os) { *os << p.label; }

class ValidateRejects : public ::testing::TestWithParam<BadProgram> {};

TEST_P(ValidateRejects, WithMessage) {
  auto ms = messages(GetParam().source);
  std::string all;
  for (const auto& m : ms) all += m + "\n";
  EXPECT_TRUE(mentions(ms, GetParam().expect)) << all;
}

INSTANTIATE_TEST_SUITE_P(
    Diagnostics, ValidateRejects,
    ::testing::Values(
        BadProgram{"DuplicateRelation", "type S\nrelation r: S\nrelation r: S\n", "duplicate relation 'r'"},
        BadProgram{"UnknownType", "relation r: Nope\n", "unknown type or lattice 'Nope'"},
        BadProgram{"UnknownRelation", "type S\nrelation r: S\nrule: q x --> r x\n", "unknown relation 'q'"},
        BadProgram{"CyclicAlias", "type A = B\ntype B = A\nrelation r: A\n", "cyclic"},
        BadProgram{"LatticeBeforeKey", "type V\nlattice D = MinDist\nrelation r: D, V\n",
                   "lattice arguments must follow key arguments"},
        BadProgram{"LatticeValueAsKey",
                   "lattice D = MinDist\ntype V\nrelation d _ <= _: V, D\nrelation n: Nat\n"
                   "rule: d v <= x --> n x\n",
                   "lattice value 'x' used as a key"},
        BadProgram{"OrderUnknownRule", "type S\nrelation r: S\nrule a: r x --> r x\norder b by asc x\n",
                   "order directive references unknown rule 'b'"},
        BadProgram{"OrderUnboundVar", "type S\nrelation r: S\nrule a: r x --> r x\norder a by asc y\n",
                   "unbound variable 'y'"},
        BadProgram{"ForallVarEscapes",
                   "type S\ntype G = Set(S)\nrelation g: S, G\nrelation p: S\n"
                   "rule: g x ss, forall s in ss. p s --> p s\n",
                   "forall variable 's' is also used outside its forall"},
        BadProgram{"WildcardInHead", "type S\nrelation r: S\nrelation q: S, S\nrule: r x --> q x _\n",
                   "wildcard '_' is only allowed in premise arguments"},
        BadProgram{"ArithmeticInPremise",
                   "type V\nlattice D = MinDist\nrelation d _ <= _: V, D\nrule: d v <= x + 1 --> d v <= x\n",
                   "arithmetic is not allowed in premise arguments"},
        BadProgram{"QueryWithConst", "type S\nrelation r: S\nconst k: S\nquery q: r k\n",
                   "query pattern cannot use const"},
        BadProgram{"BuiltinRedeclared", "type Nat\n", "cannot redeclare built-in name"},
        BadProgram{"ConstraintUnbound", "type S\nrelation r: Nat\nrule: r x, y <= 3 --> r x\n",
                   "unbound"}),
    [](const auto& info) { return std::string(info.param.label); });

TEST(Validate, DiagnosticsIgnoreDeclarationOrder) {
  const std::vector<std::string> decls = {
      "type S", "type G = Set(S)", "lattice D = MinDist", "relation r: S", "relation w _ <= _: S, D",
      "relation g: S, G", "rule a: r x --> q x", "rule b: w x <= d --> r d", "rule c: g x ss --> w x <= y",
      "order a by asc z", "rule e: r x --> r x"};
  auto collect = [](const std::vector<std::string>& ds) {
    std::string src;
    for (const auto& d : ds) src += d + "\n";
    auto ms = messages(src);
    std::sort(ms.begin(), ms.end());
    return ms;
  };
  auto base = collect(decls);
  EXPECT_FALSE(base.empty());
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    auto perm = decls;
    std::shuffle(perm.begin(), perm.end(), rng);
    ASSERT_EQ(collect(perm), base);
  }
}

TEST(Validate, AcceptedRulesAreRangeRestricted) {
  std::vector<std::string> sources;
  for (const char* name : {"graph_distance.fpop", "graph_distance_const.fpop", "dfa_minimization.fpop",
                           "tree_automata.fpop", "cnf_parse.fpop", "cnf_parse_weighted.fpop"}) {
    sources.push_back(read_file(corpus_path(name)));
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) sources.push_back(testing::random_program(seed).source);
  for (const auto& src : sources) {
    auto r = validate(parse_ok(src));
    ASSERT_TRUE(r.ok()) << src;
    for (const auto& rule : r.program->rules) EXPECT_TRUE(verify_range_restriction(rule)) << rule.name;
  }
}

TEST(Validate, AnonymousRulesAreNamedByLine) {
  auto r = validate(parse_ok("type S\nrelation r: S\n\nrule: r x --> r x\n"));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.program->rules[0].name, "rule@4");
  EXPECT_TRUE(r.program->rules[0].anonymous);
}

TEST(Validate, QueryPatternsConvertLiterals) {
  auto r = validate(parse_ok("type V\nlattice D = MinDist\nrelation d _ <= _: V, D\nquery at: d \"c\" <= _\n"));
  ASSERT_TRUE(r.ok());
  const TQuery* q = r.program->query("at");
  ASSERT_NE(q, nullptr);
  ASSERT_EQ(q->pattern.size(), 2u);
  EXPECT_EQ(q->pattern[0], Value::symbol("c"));
  EXPECT_FALSE(q->pattern[1].has_value());
}

}  // namespace
}  // namespace fpop
