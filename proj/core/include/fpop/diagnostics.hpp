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

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace fpop {

/// 1-based line and column. Positions are metadata: they never take part in
/// AST equality, so two parses of differently laid out text compare equal.
struct SourcePos {
  int line = 0;
  int col = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
  SourcePos pos;
  Severity severity = Severity::Error;
  std::string message;
};

/// `file:line:col: severity: message`
std::string format_diagnostic(std::string_view file, const Diagnostic& d);

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace fpop
