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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fpop/diagnostics.hpp"

namespace fpop {

enum class TokenKind {
  Ident,
  Int,
  String,
  Underscore,
  Colon,
  Comma,
  Arrow,  // -->
  LParen,
  RParen,
  LBrace,
  RBrace,
  Dot,
  Eq,
  Le,
  Lt,
  Ge,
  Gt,
  Plus,
  Newline,
  Eof,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string text;
  std::int64_t int_value = 0;
  SourcePos pos;
};

struct LexResult {
  std::vector<Token> tokens;  // always ends with Eof
  std::vector<Diagnostic> diagnostics;
};

/// Declarations end at a newline. A newline is not emitted when the next
/// non-blank line is indented or starts with `-->`, inside brackets, or
/// after a token that cannot end a declaration (`,` `-->` `:` operators).
LexResult lex(std::string_view source);

}  // namespace fpop
