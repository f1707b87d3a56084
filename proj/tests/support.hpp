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

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpop/diagnostics.hpp"
#include "fpop/fact_io.hpp"
#include "fpop/solver.hpp"

namespace fpop::testing {

inline std::string corpus_path(const std::string& rel) { return std::string(FPOP_CORPUS_DIR) + "/" + rel; }

/// Throws with the diagnostics when `source` does not compile.
inline CompiledProgram compile_or_throw(std::string_view source) {
  CompiledProgram c = compile_program(source);
  if (!c.ok()) {
    std::string msg = "program does not compile:";
    for (const auto& d : c.diagnostics) msg += "\n  " + format_diagnostic("<input>", d);
    throw std::runtime_error(msg);
  }
  return c;
}

inline CompiledProgram compile_corpus(const std::string& name) {
  return compile_or_throw(read_file(corpus_path(name)));
}

inline std::unique_ptr<Solver> make_solver(const CompiledProgram& c, const std::vector<FactInput>& facts,
                                           SolverOptions opts = {},
                                           const std::map<std::string, Value>& consts = {}) {
  auto s = std::make_unique<Solver>(c.plan, consts, opts);
  for (const auto& f : facts) s->insert_fact(f);
  return s;
}

inline Value sym(std::string_view s) { return Value::symbol(s); }
inline Value nat(std::uint64_t n) { return Value::nat(n); }

}  // namespace fpop::testing
