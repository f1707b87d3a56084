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


#include "fpop/corpus/manifest.hpp"

#include <filesystem>

#include <json.hpp>

#include "fpop/fact_io.hpp"

namespace fpop::corpus {

std::vector<CorpusEntry> load_manifest(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  const std::string path = (root / "instances.json").string();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(0, e.what(), path);
  }
  std::vector<CorpusEntry> out;
  try {
    for (const auto& item : doc.at("instances")) {
      CorpusEntry e;
      e.name = item.at("name").get<std::string>();
      e.program = (root / item.at("program").get<std::string>()).string();
      const nlohmann::json facts = item.value("facts", nlohmann::json::array());
      const nlohmann::json consts = item.value("consts", nlohmann::json::object());
      for (const auto& f : facts) {
        e.facts.push_back((root / f.get<std::string>()).string());
      }
      for (const auto& [k, v] : consts.items()) {
        e.consts[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(0, e.what(), path);
  }
  return out;
}

}  // namespace fpop::corpus
