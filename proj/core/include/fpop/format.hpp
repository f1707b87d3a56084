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

#include <string>

#include "fpop/ast.hpp"

namespace fpop {

/// Pretty-prints a program, one declaration per line, such that parsing the
/// output yields a structurally equal AST. Empty programs print as "".
std::string format_program(const ast::Program& p);

std::string format_expr(const ast::Expr& e);
std::string format_atom(const ast::Atom& a);
std::string format_type_expr(const ast::TypeExpr& t);

}  // namespace fpop
