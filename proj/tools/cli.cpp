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


#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "fpop/corpus/instances.hpp"
#include "fpop/diagnostics.hpp"
#include "fpop/fact_io.hpp"

namespace fpop::cli {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("cannot write '" + path + "'");
}

void print_diagnostics(const std::string& file, const std::vector<Diagnostic>& ds, std::ostream& err) {
  for (const auto& d : ds) err << format_diagnostic(file, d) << '\n';
}

void write_facts(std::string_view relation, const std::vector<Tuple>& rows, std::ostream& out) {
  for (const auto& t : rows) out << fact_to_json(relation, t) << '\n';
}

}  // namespace

std::string RunConfig::check() const {
  if (workers < 1) return "--workers must be at least 1";
  if (schedule == Schedule::Random && !seed) return "--schedule random requires --seed";
  return "";
}

int cmd_check(const std::string& program, std::ostream& out, std::ostream& err) {
  std::string source;
  try {
    source = read_file(program);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  CompiledProgram c = compile_program(source);
  print_diagnostics(program, c.diagnostics, err);
  if (!c.ok()) return kProgramError;
  out << program << ": ok\n";
  return kOk;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (std::string why = config.check(); !why.empty()) {
    err << "error: " << why << '\n';
    return kInputError;
  }
  try {
    CompiledProgram c = compile_program(read_file(config.program));
    print_diagnostics(config.program, c.diagnostics, err);
    if (!c.ok()) return kProgramError;
    const TypedProgram& prog = *c.program;

    std::map<std::string, Value> consts;
    for (const auto& [name, text] : config.consts) {
      auto idx = prog.const_index(name);
      if (!idx) {
        err << "error: unknown const '" << name << "'\n";
        return kProgramError;
      }
      try {
        consts[name] = value_from_text(text, prog.consts[*idx].type);
      } catch (const FormatError& e) {
        err << "error: --const " << name << ": " << e.message() << '\n';
        return kInputError;
      }
    }

    struct Selected {
      std::string relation;
      std::vector<std::optional<Value>> pattern;
    };
    std::vector<Selected> selected;
    for (const auto& q : config.queries) {
      if (const TQuery* tq = prog.query(q)) {
        selected.push_back({prog.relations[tq->relation].name, tq->pattern});
      } else if (prog.relation_index(q)) {
        selected.push_back({q, {}});
      } else {
        err << "error: '" << q << "' is neither a query nor a relation\n";
        return kProgramError;
      }
    }

    std::vector<FactInput> facts;
    for (const auto& path : config.fact_files) {
      auto more = parse_fact_file(path, prog);
      facts.insert(facts.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }

    if (!config.plan_path.empty()) write_file(config.plan_path, plan_to_json(*c.plan));

    SolverOptions opts;
    opts.schedule = config.schedule;
    opts.seed = config.seed.value_or(0);
    Solver solver(c.plan, consts, opts);
    for (const auto& f : facts) solver.insert_fact(f);
    SolverStats stats = config.naive ? solver.solve_naive() : solver.solve(config.workers);

    if (selected.empty()) {
      for (const auto& rel : prog.relations) write_facts(rel.name, solver.query(rel.name), out);
    } else {
      for (const auto& s : selected) write_facts(s.relation, solver.query(s.relation, s.pattern), out);
    }
    if (!config.stats_path.empty()) write_file(config.stats_path, stats.to_json() + "\n");
    return kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kProgramError;
  }
}

int cmd_gen(const GenConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<FactInput> facts;
  switch (config.kind) {
    case GenKind::Graph:
      facts = corpus::gen_random_graph(config.seed, config.n, config.m, config.max_weight).facts();
      break;
    case GenKind::Layered:
      facts = corpus::gen_layered_graph(config.layers, config.width).facts();
      break;
    case GenKind::Dfa:
      facts = corpus::gen_random_dfa(config.seed, config.n, config.alphabet).facts();
      break;
    case GenKind::Grammar: {
      auto [g, input] = corpus::gen_random_grammar(config.seed, config.grammar);
      facts = g.facts(input);
      break;
    }
    case GenKind::Tree:
      facts = corpus::gen_random_tree_automaton(config.seed, config.n, config.m).facts();
      break;
  }
  if (facts.empty()) {
    err << "error: generator produced no facts\n";
    return kInputError;
  }
  out << corpus::to_jsonl(facts);
  return kOk;
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fpop: fixed-point solver for lattice-valued rule programs"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "Validate a program and print diagnostics");
  check->add_option("program", check_path, "Program file")->required();

  RunConfig run;
  std::vector<std::string> const_args;
  std::string schedule = "priority";
  std::uint64_t seed = 0;
  auto* runc = app.add_subcommand("run", "Solve a program over fact files");
  runc->add_option("program", run.program, "Program file")->required();
  runc->add_option("--facts", run.fact_files, "JSON Lines fact files");
  runc->add_option("--const", const_args, "Const binding name=value");
  runc->add_option("--query", run.queries, "Query or relation to print");
  runc->add_option("--workers", run.workers, "Worker threads")->check(CLI::PositiveNumber);
  runc->add_option("--schedule", schedule, "priority, fifo or random")
      ->check(CLI::IsMember({"priority", "fifo", "random"}));
  auto* seed_opt = runc->add_option("--seed", seed, "Seed for the random schedule");
  runc->add_flag("--naive", run.naive, "Re-evaluate every rule in rounds instead of by deltas");
  runc->add_option("--stats", run.stats_path, "Write solver statistics as JSON");
  runc->add_option("--dump-plan", run.plan_path, "Write the evaluation plan as JSON");

  GenConfig gen;
  std::string kind;
  auto* genc = app.add_subcommand("gen", "Write a generated instance as fact lines");
  genc->add_option("kind", kind, "graph, layered, dfa, grammar or tree")
      ->required()
      ->check(CLI::IsMember({"graph", "layered", "dfa", "grammar", "tree"}));
  genc->add_option("--seed", gen.seed);
  genc->add_option("--n", gen.n, "Vertices or states");
  genc->add_option("--m", gen.m, "Edges or hyperedges");
  genc->add_option("--max-weight", gen.max_weight);
  genc->add_option("--alphabet", gen.alphabet);
  genc->add_option("--layers", gen.layers);
  genc->add_option("--width", gen.width);
  genc->add_option("--nonterminals", gen.grammar.nonterminals);
  genc->add_option("--terminals", gen.grammar.terminals);
  genc->add_option("--concatenations", gen.grammar.concatenations);
  genc->add_option("--epsilons", gen.grammar.epsilons);
  genc->add_option("--lookaheads", gen.grammar.lookaheads);
  genc->add_option("--conjunctions", gen.grammar.conjunctions);
  genc->add_option("--length", gen.grammar.input_length, "Input tokens");
  genc->add_flag("--weighted", gen.grammar.weighted);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (check->parsed()) return cmd_check(check_path, out, err);
  if (runc->parsed()) {
    for (const auto& c : const_args) {
      auto eq = c.find('=');
      if (eq == std::string::npos || eq == 0) {
        err << "error: --const expects name=value, found '" << c << "'\n";
        return kInputError;
      }
      run.consts.emplace_back(c.substr(0, eq), c.substr(eq + 1));
    }
    run.schedule = schedule == "fifo" ? Schedule::Fifo : schedule == "random" ? Schedule::Random : Schedule::Priority;
    if (*seed_opt) run.seed = seed;
    return cmd_run(run, out, err);
  }
  static const std::map<std::string, GenKind> kinds = {{"graph", GenKind::Graph},
                                                       {"layered", GenKind::Layered},
                                                       {"dfa", GenKind::Dfa},
                                                       {"grammar", GenKind::Grammar},
                                                       {"tree", GenKind::Tree}};
  gen.kind = kinds.at(kind);
  return cmd_gen(gen, out, err);
}

}  // namespace fpop::cli
