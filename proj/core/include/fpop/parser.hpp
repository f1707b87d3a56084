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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpop/ast.hpp"
#include "fpop/lexer.hpp"
#include "fpop/value.hpp"

namespace fpop {

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message) : Error(message), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

struct ParseResult {
  ast::Program program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

/// Parses FPOP source. Declarations with syntax errors are dropped and
/// reported; the rest of the program is still returned.
///
/// The pairwise order directive
///   order: a <= b --> r { v = a } <= r { v = b }
/// is desugared to `order r by asc v`.
ParseResult parse_program(std::string_view source);

/// The template of `decl` with placeholders made explicit: a relation
/// declared without one reads `_ _ ... _`.
std::vector<std::string> effective_shape(const ast::RelationDecl& decl);

/// Reads one atom from `tokens` (which must start with the relation name)
/// following the declared template. Throws ParseError on a separator or
/// placeholder mismatch.
ast::Atom parse_atom_by_template(const ast::RelationDecl& decl, std::span<const Token> tokens);

}  // namespace fpop
