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

#include "fpop/fact_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fpop/parser.hpp"

namespace fpop {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

namespace {

using nlohmann::json;

Value convert(const json& j, const Type& t, std::size_t line) {
  auto fail = [&]() -> Value {
    throw FormatError(line, "expected " + to_string(t) + ", found " + j.dump());
  };
  switch (t.kind) {
    case Type::Kind::Boolean:
      if (j.is_boolean()) return Value::boolean(j.get<bool>());
      return fail();
    case Type::Kind::Integer:
      if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
      return fail();
    case Type::Kind::Nat:
      if (j.is_string() && j.get<std::string>() == "inf") return Value::infinity();
      if (j.is_number_unsigned()) return Value::nat(j.get<std::uint64_t>());
      if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return Value::nat(static_cast<std::uint64_t>(j.get<std::int64_t>()));
      }
      return fail();
    case Type::Kind::Symbol:
      if (j.is_string()) return Value::symbol(j.get<std::string>());
      return fail();
    case Type::Kind::Tuple: {
      if (!j.is_array() || j.size() != t.params.size()) return fail();
      std::vector<Value> elems;
      for (std::size_t i = 0; i < j.size(); ++i) elems.push_back(convert(j[i], t.params[i], line));
      return Value::tuple(std::move(elems));
    }
    case Type::Kind::Set: {
      if (!j.is_array()) return fail();
      std::vector<Value> elems;
      for (const auto& e : j) elems.push_back(convert(e, t.params[0], line));
      return Value::set(std::move(elems));
    }
    case Type::Kind::Partition: {
      if (!j.is_array()) return fail();
      std::vector<std::vector<Value>> blocks;
      for (const auto& b : j) {
        if (!b.is_array()) return fail();
        std::vector<Value> block;
        for (const auto& e : b) block.push_back(convert(e, t.params[0], line));
        blocks.push_back(std::move(block));
      }
      try {
        return Value::partition(std::move(blocks));
      } catch (const Error& e) {
        throw FormatError(line, e.what());
      }
    }
  }
  return fail();
}

}  // namespace

std::vector<FactInput> parse_facts(std::string_view text, const TypedProgram& program) {
  std::vector<FactInput> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw FormatError(line_no, "not valid JSON");
    }
    if (!j.is_object() || !j.contains("relation") || !j["relation"].is_string() ||
        !j.contains("args") || !j["args"].is_array()) {
      throw FormatError(line_no, "expected {\"relation\": name, \"args\": [...]}");
    }
    FactInput f;
    f.relation = j["relation"].get<std::string>();
    auto idx = program.relation_index(f.relation);
    if (!idx) throw FormatError(line_no, "unknown relation '" + f.relation + "'");
    const RelationInfo& rel = program.relations[*idx];
    const json& args = j["args"];
    if (args.size() != rel.arity()) {
      throw FormatError(line_no, "relation '" + rel.name + "' takes " + std::to_string(rel.arity()) +
                                     " arguments, found " + std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < args.size(); ++i) f.args.push_back(convert(args[i], rel.arg_type(i), line_no));
    out.push_back(std::move(f));
    if (end == text.size()) break;
  }
  return out;
}

std::vector<FactInput> parse_fact_file(const std::string& path, const TypedProgram& program) {
  std::string text = read_file(path);
  try {
    return parse_facts(text, program);
  } catch (const FormatError& e) {
    throw FormatError(e.line(), e.message(), path);
  }
}

Value value_from_text(std::string_view text, const Type& type) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    j = std::string(text);
  }
  return convert(j, type, 0);
}

CompiledProgram compile_program(std::string_view source) {
  CompiledProgram out;
  ParseResult parsed = parse_program(source);
  out.diagnostics = parsed.diagnostics;
  if (!parsed.ok()) return out;
  ValidationResult valid = validate(parsed.program);
  out.diagnostics.insert(out.diagnostics.end(), valid.diagnostics.begin(), valid.diagnostics.end());
  if (!valid.ok()) return out;
  out.program = valid.program;
  auto plan = std::make_shared<Plan>(build_plan(valid.program));
  out.diagnostics.insert(out.diagnostics.end(), plan->diagnostics.begin(), plan->diagnostics.end());
  out.plan = std::move(plan);
  return out;
}

}  // namespace fpop
