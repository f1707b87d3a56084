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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fpop/plan.hpp"
#include "fpop/program.hpp"
#include "fpop/solver.hpp"

namespace fpop {

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed fact input. `line()` is 1-based, 0 when not line-specific.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message, const std::string& file = "")
      : Error((file.empty() ? "" : file + ": ") +
              (line ? "line " + std::to_string(line) + ": " : "") + message),
        line_(line),
        message_(message) {}
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

std::string read_file(const std::string& path);

/// Parses JSON Lines `{"relation": name, "args": [...]}`, converting each
/// argument to the declared type: numbers, strings for symbols, "inf" for
/// infinity, arrays for tuples and sets, arrays of arrays for partitions.
/// Blank lines are skipped.
std::vector<FactInput> parse_facts(std::string_view text, const TypedProgram& program);
std::vector<FactInput> parse_fact_file(const std::string& path, const TypedProgram& program);

/// Reads a command-line value: JSON when it parses, otherwise a bare symbol.
Value value_from_text(std::string_view text, const Type& type);

struct CompiledProgram {
  std::shared_ptr<const TypedProgram> program;
  std::shared_ptr<const Plan> plan;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return plan && plan->ok(); }
};

/// Parses, validates and plans. Diagnostics from every stage that ran are
/// collected; later stages are skipped after errors.
CompiledProgram compile_program(std::string_view source);

}  // namespace fpop
