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
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpop/corpus/generators.hpp"
#include "fpop/solver.hpp"

namespace fpop::cli {

enum ExitCode : int { kOk = 0, kProgramError = 1, kInputError = 2 };

struct RunConfig {
  std::string program;
  std::vector<std::string> fact_files;
  std::vector<std::pair<std::string, std::string>> consts;
  std::vector<std::string> queries;  // declared query names or relation names
  std::size_t workers = 1;
  Schedule schedule = Schedule::Priority;
  std::optional<std::uint64_t> seed;
  bool naive = false;
  std::string stats_path;  // empty: no stats
  std::string plan_path;   // empty: no plan

  /// Empty when usable, otherwise the reason it is not.
  std::string check() const;
};

/// Prints diagnostics to `err`; kOk iff the program validates and plans.
int cmd_check(const std::string& program, std::ostream& out, std::ostream& err);

/// Solves and writes the queried facts, or every fact when no query is
/// given, as JSON Lines in canonical order.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

enum class GenKind { Graph, Layered, Dfa, Grammar, Tree };

struct GenConfig {
  GenKind kind = GenKind::Graph;
  std::uint64_t seed = 0;
  std::size_t n = 10;  // vertices or states
  std::size_t m = 20;  // edges or hyperedges
  std::uint64_t max_weight = 10;
  std::size_t alphabet = 2;
  std::size_t layers = 10;
  std::size_t width = 10;
  corpus::GrammarSizes grammar;
};

/// Writes a generated instance as fact lines.
int cmd_gen(const GenConfig& config, std::ostream& out, std::ostream& err);

/// Entry point shared by the `fpop` binary and tests.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fpop::cli
