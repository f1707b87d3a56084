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
#include <string>
#include <vector>

namespace fpop::corpus {

/// One program run listed in `instances.json`. Paths are absolute.
struct CorpusEntry {
  std::string name;
  std::string program;
  std::vector<std::string> facts;
  std::map<std::string, std::string> consts;
};

/// Reads `<dir>/instances.json`. Throws IoError or FormatError.
std::vector<CorpusEntry> load_manifest(const std::string& dir);

}  // namespace fpop::corpus
