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

#include <algorithm>
#include <map>
#include <set>

#include "fpop/parser.hpp"
#include "fpop/program.hpp"

namespace fpop {

void TExpr::collect_vars(std::vector<int>& out) const {
  if (kind == Kind::Var) out.push_back(slot);
  for (const auto& o : operands) o.collect_vars(out);
}

std::size_t TRule::atom_count() const {
  return static_cast<std::size_t>(std::count_if(body.begin(), body.end(), [](const TPremise& p) {
    return std::holds_alternative<TAtom>(p);
  }));
}

Value RelationInfo::pack_value(std::span<const Value> lattice_args) const {
  if (lattices.empty()) return Value::boolean(true);
  if (lattices.size() == 1) return lattice_args[0];
  return Value::tuple(std::vector<Value>(lattice_args.begin(), lattice_args.end()));
}

std::vector<Value> RelationInfo::unpack_value(const Value& v) const {
  if (lattices.empty()) return {};
  if (lattices.size() == 1) return {v};
  auto e = v.elements();
  return {e.begin(), e.end()};
}

std::optional<int> TypedProgram::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> TypedProgram::rule_index(std::string_view name) const {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> TypedProgram::const_index(std::string_view name) const {
  for (std::size_t i = 0; i < consts.size(); ++i) {
    if (consts[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

const TQuery* TypedProgram::query(std::string_view name) const {
  for (const auto& q : queries) {
    if (q.name == name) return &q;
  }
  return nullptr;
}

namespace {

template <typename... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const std::set<std::string, std::less<>> kBuiltinTypes = {"Symbol", "Int", "Nat", "Bool"};
const std::set<std::string, std::less<>> kBuiltinLattices = {"MinDist", "MaxNat"};
const std::set<std::string, std::less<>> kConstructors = {"Set", "Tuple", "Partition", "Dual",
                                                          "Product"};

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string shape_text(std::string_view rel, const std::vector<std::string>& shape) {
  std::string out(rel);
  for (const auto& s : shape) out += " " + s;
  return out;
}

std::size_t holes(const std::vector<std::string>& shape) {
  return static_cast<std::size_t>(std::count(shape.begin(), shape.end(), "_"));
}

bool is_plain_name(const ast::Expr& e) { return e.kind == ast::Expr::Kind::Name; }

enum class ArgKind { Key, Lattice, Unknown };

class Validator;

/// Types and checks one rule. Inference runs silently to a fixpoint first;
/// errors are reported only while building the typed premises.
class RuleChecker {
 public:
  RuleChecker(Validator& v, const ast::RuleDecl& r) : v_(v), r_(r) {}

  std::optional<TRule> run();

 private:
  enum class Ctx { BodyArg, HeadArg, Constraint, Collection };

  void register_vars(const ast::Expr& e);
  void register_atom(const ast::Atom& a) {
    for (const auto& e : a.args) register_vars(e);
  }
  std::optional<int> slot_of(const std::string& name) const {
    auto it = slots_.find(name);
    if (it == slots_.end()) return std::nullopt;
    return it->second;
  }
  void names_in(const ast::Expr& e, std::vector<int>& out) const;

  bool learn(const ast::Expr& e, const Type& t);
  bool learn_atom(const ast::Atom& a);
  std::optional<Type> infer(const ast::Expr& e) const;
  void infer_all();

  bool head_lattice_only(int slot) const;
  std::optional<int> assignment_target(const ast::Constraint& c) const;
  void walk();

  std::optional<TExpr> build(const ast::Expr& e, const std::optional<Type>& expected, Ctx ctx);
  std::optional<TAtom> build_atom(const ast::Atom& a, bool head);
  void check_keys(const ast::Atom& a, const TAtom& t);

  Validator& v_;
  const ast::RuleDecl& r_;
  std::map<std::string, int> slots_;
  std::vector<std::string> names_;
  std::vector<std::optional<Type>> types_;
  std::vector<bool> bound_;
  std::vector<bool> derived_;
  std::vector<int> order_;
  std::map<std::size_t, int> assigns_;  // body index -> assigned slot
  bool failed_ = false;
};

class Validator {
 public:
  explicit Validator(const ast::Program& p) : src_(p), out_(std::make_shared<TypedProgram>()) {
    out_->source = p;
  }

  ValidationResult run() {
    collect();
    for (const auto& [name, d] : type_decls_) resolve_named_type(name, d->pos);
    for (const auto& [name, d] : lattice_decls_) resolve_named_lattice(name, d->pos);
    for (const auto* d : src_.all<ast::RelationDecl>()) relation(*d);
    for (const auto* d : src_.all<ast::ConstDecl>()) {
      if (out_->const_index(d->name)) continue;
      auto t = resolve_type(d->type);
      out_->consts.push_back({d->name, t.value_or(Type::symbol())});
    }
    for (const auto* d : src_.all<ast::RuleDecl>()) {
      RuleChecker rc(*this, *d);
      if (auto rule = rc.run()) out_->rules.push_back(std::move(*rule));
      else rules_failed_ = true;
    }
    for (const auto* d : src_.all<ast::OrderDecl>()) order(*d);
    for (const auto* d : src_.all<ast::QueryDecl>()) query(*d);

    ValidationResult res;
    res.diagnostics = std::move(diags_);
    if (!has_errors(res.diagnostics)) res.program = out_;
    return res;
  }

  void error(SourcePos pos, std::string msg) {
    diags_.push_back({pos, Severity::Error, std::move(msg)});
  }

  const RelationInfo* relation_info(std::string_view name) const {
    auto idx = out_->relation_index(name);
    return idx ? &out_->relations[*idx] : nullptr;
  }
  int relation_id(std::string_view name) const { return out_->relation_index(name).value_or(-1); }
  bool relation_broken(std::string_view name) const { return broken_relations_.count(name) > 0; }
  bool relation_declared(std::string_view name) const { return relation_decls_.count(name) > 0; }
  const ast::RelationDecl& relation_decl(std::string_view name) const {
    return *relation_decls_.find(name)->second;
  }
  std::optional<int> const_index(std::string_view name) const { return out_->const_index(name); }
  const ConstInfo& const_info(int i) const { return out_->consts[i]; }

  /// Converts a literal to a value of `t`, reporting on mismatch.
  std::optional<Value> literal(const ast::Expr& e, const Type& t) {
    using K = ast::Expr::Kind;
    switch (e.kind) {
      case K::IntLit:
        if (t.kind == Type::Kind::Integer) return Value::integer(e.int_value);
        if (t.kind == Type::Kind::Nat) {
          if (e.int_value < 0) {
            error(e.pos, "negative literal " + std::to_string(e.int_value) + " where Nat is expected");
            return std::nullopt;
          }
          return Value::nat(static_cast<std::uint64_t>(e.int_value));
        }
        break;
      case K::InfLit:
        if (t.kind == Type::Kind::Nat) return Value::infinity();
        break;
      case K::StringLit:
        if (t.kind == Type::Kind::Symbol) return Value::symbol(e.text);
        break;
      case K::BoolLit:
        if (t.kind == Type::Kind::Boolean) return Value::boolean(e.bool_value);
        break;
      case K::SetLit: {
        if (t.kind != Type::Kind::Set) break;
        std::vector<Value> elems;
        for (const auto& o : e.operands) {
          auto v = literal(o, t.params[0]);
          if (!v) return std::nullopt;
          elems.push_back(*v);
        }
        return Value::set(std::move(elems));
      }
      default:
        break;
    }
    error(e.pos, "literal does not have type " + to_string(t));
    return std::nullopt;
  }

 private:
  void collect() {
    std::set<std::string> rules, queries, consts, relations;
    auto dup = [&](std::set<std::string>& seen, const std::string& name, SourcePos pos,
                   std::string_view what) {
      if (seen.insert(name).second) return false;
      error(pos, "duplicate " + std::string(what) + " " + quoted(name));
      return true;
    };
    auto builtin = [&](const std::string& name, SourcePos pos) {
      if (kBuiltinTypes.count(name) || kBuiltinLattices.count(name) || kConstructors.count(name)) {
        error(pos, "cannot redeclare built-in name " + quoted(name));
        return true;
      }
      return false;
    };
    for (const auto& decl : src_.decls) {
      std::visit(overloaded{
                     [&](const ast::TypeDecl& d) {
                       if (builtin(d.name, d.pos)) return;
                       if (type_decls_.count(d.name)) {
                         error(d.pos, "duplicate type " + quoted(d.name));
                         return;
                       }
                       type_decls_[d.name] = &d;
                     },
                     [&](const ast::LatticeDecl& d) {
                       if (builtin(d.name, d.pos)) return;
                       if (lattice_decls_.count(d.name)) {
                         error(d.pos, "duplicate lattice " + quoted(d.name));
                         return;
                       }
                       lattice_decls_[d.name] = &d;
                     },
                     [&](const ast::RelationDecl& d) {
                       if (!dup(relations, d.name, d.pos, "relation")) relation_decls_[d.name] = &d;
                     },
                     [&](const ast::ConstDecl& d) { dup(consts, d.name, d.pos, "const"); },
                     [&](const ast::RuleDecl& d) {
                       if (d.name) dup(rules, *d.name, d.pos, "rule");
                     },
                     [&](const ast::QueryDecl& d) { dup(queries, d.name, d.pos, "query"); },
                     [](const ast::OrderDecl&) {},
                 },
                 decl);
    }
    for (const auto& [name, d] : lattice_decls_) {
      if (type_decls_.count(name)) {
        error(d->pos, quoted(name) + " is declared both as a type and as a lattice");
      }
    }
  }

  std::optional<Type> resolve_named_type(const std::string& name, SourcePos pos) {
    if (auto it = type_memo_.find(name); it != type_memo_.end()) return it->second;
    const ast::TypeDecl* d = type_decls_.at(name);
    if (!d->alias) return type_memo_[name] = Type::symbol(name);
    if (!resolving_.insert(name).second) {
      error(pos, "type alias " + quoted(name) + " is cyclic");
      return type_memo_[name] = std::nullopt;
    }
    auto t = resolve_type(*d->alias);
    resolving_.erase(name);
    return type_memo_[name] = t;
  }

  std::optional<Type> resolve_type(const ast::TypeExpr& t) {
    const std::string& n = t.name;
    auto arity = [&](std::size_t want) {
      if (t.params.size() == want) return true;
      error(t.pos, quoted(n) + " takes " + std::to_string(want) + " type parameter(s), found " +
                       std::to_string(t.params.size()));
      return false;
    };
    if (kBuiltinTypes.count(n)) {
      if (!arity(0)) return std::nullopt;
      if (n == "Int") return Type::integer();
      if (n == "Nat") return Type::nat();
      if (n == "Bool") return Type::boolean();
      return Type::symbol();
    }
    if (n == "Set" || n == "Partition") {
      if (!arity(1)) return std::nullopt;
      auto elem = resolve_type(t.params[0]);
      if (!elem) return std::nullopt;
      return n == "Set" ? Type::set(*elem) : Type::partition(*elem);
    }
    if (n == "Tuple") {
      if (t.params.empty()) {
        error(t.pos, "'Tuple' needs at least one type parameter");
        return std::nullopt;
      }
      std::vector<Type> elems;
      for (const auto& p : t.params) {
        auto e = resolve_type(p);
        if (!e) return std::nullopt;
        elems.push_back(*e);
      }
      return Type::tuple(std::move(elems));
    }
    if (type_decls_.count(n)) {
      if (!arity(0)) return std::nullopt;
      return resolve_named_type(n, t.pos);
    }
    if (lattice_decls_.count(n) || kBuiltinLattices.count(n) || n == "Dual" || n == "Product") {
      error(t.pos, "lattice " + quoted(n) + " used where a type is required");
      return std::nullopt;
    }
    error(t.pos, "unknown type " + quoted(n));
    return std::nullopt;
  }

  LatticeRef resolve_named_lattice(const std::string& name, SourcePos pos) {
    if (auto it = lattice_memo_.find(name); it != lattice_memo_.end()) return it->second;
    if (!resolving_.insert(name).second) {
      error(pos, "lattice " + quoted(name) + " is cyclic");
      return lattice_memo_[name] = nullptr;
    }
    auto l = resolve_lattice(lattice_decls_.at(name)->expr);
    resolving_.erase(name);
    return lattice_memo_[name] = l;
  }

  LatticeRef resolve_lattice(const ast::TypeExpr& t) {
    const std::string& n = t.name;
    auto arity = [&](std::size_t want) {
      if (t.params.size() == want) return true;
      error(t.pos, quoted(n) + " takes " + std::to_string(want) + " parameter(s), found " +
                       std::to_string(t.params.size()));
      return false;
    };
    try {
      if (n == "MinDist" || n == "MaxNat" || n == "Bool") {
        if (!arity(0)) return nullptr;
        return make_builtin(n);
      }
      if (n == "Set" || n == "Partition") {
        if (!arity(1)) return nullptr;
        auto elem = resolve_type(t.params[0]);
        if (!elem) return nullptr;
        return n == "Set" ? set_lattice(*elem) : partition_lattice(*elem);
      }
      if (n == "Dual") {
        if (!arity(1)) return nullptr;
        auto inner = resolve_lattice(t.params[0]);
        if (!inner) return nullptr;
        return dual_lattice(inner);
      }
      if (n == "Product") {
        if (t.params.empty()) {
          error(t.pos, "'Product' needs at least one lattice parameter");
          return nullptr;
        }
        std::vector<LatticeRef> parts;
        for (const auto& p : t.params) {
          auto l = resolve_lattice(p);
          if (!l) return nullptr;
          parts.push_back(l);
        }
        return product_lattice(std::move(parts));
      }
    } catch (const LatticeError& e) {
      error(t.pos, e.what());
      return nullptr;
    }
    if (lattice_decls_.count(n)) {
      if (!arity(0)) return nullptr;
      return resolve_named_lattice(n, t.pos);
    }
    if (type_decls_.count(n) || kBuiltinTypes.count(n) || n == "Tuple") {
      error(t.pos, "type " + quoted(n) + " used where a lattice is required");
      return nullptr;
    }
    error(t.pos, "unknown lattice " + quoted(n));
    return nullptr;
  }

  ArgKind arg_kind(const ast::TypeExpr& t) const {
    const std::string& n = t.name;
    if (t.params.empty()) {
      if (lattice_decls_.count(n) || kBuiltinLattices.count(n)) return ArgKind::Lattice;
      if (type_decls_.count(n) || kBuiltinTypes.count(n)) return ArgKind::Key;
      return ArgKind::Unknown;
    }
    if (n == "Set" || n == "Partition" || n == "Dual" || n == "Product") return ArgKind::Lattice;
    if (n == "Tuple") return ArgKind::Key;
    return ArgKind::Unknown;
  }

  void relation(const ast::RelationDecl& d) {
    if (relation_decls_.at(d.name) != &d) return;  // duplicate, already reported
    RelationInfo info;
    info.name = d.name;
    info.pos = d.pos;
    info.shape = effective_shape(d);
    bool ok = true;
    for (const auto& arg : d.args) {
      switch (arg_kind(arg)) {
        case ArgKind::Lattice: {
          auto l = resolve_lattice(arg);
          if (l) info.lattices.push_back(l);
          else ok = false;
          break;
        }
        case ArgKind::Key: {
          if (!info.lattices.empty()) {
            error(arg.pos, "lattice arguments must follow key arguments in relation " + quoted(d.name));
            ok = false;
          }
          auto t = resolve_type(arg);
          if (t) info.key_types.push_back(*t);
          else ok = false;
          break;
        }
        case ArgKind::Unknown:
          error(arg.pos, "unknown type or lattice " + quoted(arg.name));
          ok = false;
          break;
      }
    }
    if (info.lattices.empty()) info.value_lattice = bool_lattice();
    else if (info.lattices.size() == 1) info.value_lattice = info.lattices[0];
    else info.value_lattice = product_lattice(info.lattices);
    if (!ok) broken_relations_.insert(d.name);
    out_->relations.push_back(std::move(info));
  }

  void order(const ast::OrderDecl& d) {
    auto idx = out_->rule_index(d.rule);
    if (!idx || out_->rules[*idx].anonymous) {
      // A rule that failed validation is still declared; stay quiet then.
      if (!rules_failed_ || !named_rule_declared(d.rule)) {
        error(d.pos, "order directive references unknown rule " + quoted(d.rule));
      }
      return;
    }
    for (const auto& o : out_->orders) {
      if (o.rule == *idx) {
        error(d.pos, "rule " + quoted(d.rule) + " has more than one order directive");
        return;
      }
    }
    const TRule& rule = out_->rules[*idx];
    TOrder o;
    o.rule = *idx;
    o.direction = d.direction;
    o.pos = d.pos;
    auto built = priority_expr(d.priority, rule, d.rule);
    if (!built) return;
    o.priority = std::move(*built);
    out_->orders.push_back(std::move(o));
  }

  std::optional<TExpr> priority_expr(const ast::Expr& e, const TRule& rule, const std::string& rname) {
    using K = ast::Expr::Kind;
    TExpr out;
    switch (e.kind) {
      case K::Name: {
        if (auto c = const_index(e.text)) {
          out.kind = TExpr::Kind::ConstRef;
          out.slot = *c;
          out.type = const_info(*c).type;
          return out;
        }
        for (std::size_t s = 0; s < rule.vars.size(); ++s) {
          if (rule.vars[s].name == e.text && body_binds(rule, static_cast<int>(s))) {
            out.kind = TExpr::Kind::Var;
            out.slot = static_cast<int>(s);
            out.type = rule.vars[s].type;
            return out;
          }
        }
        error(e.pos, "order directive references unbound variable " + quoted(e.text) + " of rule " +
                         quoted(rname));
        return std::nullopt;
      }
      case K::Add: {
        auto l = priority_expr(e.operands[0], rule, rname);
        auto r = priority_expr(e.operands[1], rule, rname);
        if (!l || !r) return std::nullopt;
        if (!(l->type == r->type) || !l->type.is_numeric()) {
          error(e.pos, "'+' needs two Int or two Nat operands");
          return std::nullopt;
        }
        out.kind = TExpr::Kind::Add;
        out.type = l->type;
        out.operands = {std::move(*l), std::move(*r)};
        return out;
      }
      case K::IntLit: {
        out.kind = TExpr::Kind::Const;
        out.type = Type::integer();
        out.value = Value::integer(e.int_value);
        return out;
      }
      default:
        error(e.pos, "unsupported priority expression in order directive");
        return std::nullopt;
    }
  }

  static bool body_binds(const TRule& rule, int slot) {
    for (const auto& p : rule.body) {
      if (const auto* a = std::get_if<TAtom>(&p)) {
        for (const auto& arg : a->args) {
          if (arg.is_var() && arg.slot == slot) return true;
        }
      } else if (const auto* c = std::get_if<TConstraint>(&p)) {
        if (c->assign_slot == slot) return true;
      }
    }
    return false;
  }

  bool named_rule_declared(std::string_view name) const {
    for (const auto* r : src_.all<ast::RuleDecl>()) {
      if (r->name && *r->name == name) return true;
    }
    return false;
  }

  void query(const ast::QueryDecl& d) {
    const auto& a = d.pattern;
    if (!relation_declared(a.relation)) {
      error(a.pos, "unknown relation " + quoted(a.relation));
      return;
    }
    if (relation_broken(a.relation)) return;
    const RelationInfo& rel = *relation_info(a.relation);
    if (a.shape != rel.shape) {
      if (holes(a.shape) != rel.arity()) {
        error(a.pos, "arity mismatch for " + quoted(rel.name) + ": expected " +
                         std::to_string(rel.arity()) + " arguments, found " +
                         std::to_string(holes(a.shape)));
      } else {
        error(a.pos, "separator mismatch for " + quoted(rel.name) + ": expected " +
                         quoted(shape_text(rel.name, rel.shape)));
      }
      return;
    }
    TQuery q;
    q.name = d.name;
    q.relation = relation_id(a.relation);
    bool ok = true;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      const auto& e = a.args[i];
      if (e.kind == ast::Expr::Kind::Wildcard) {
        q.pattern.emplace_back();
      } else if (e.kind == ast::Expr::Kind::Name) {
        if (const_index(e.text)) {
          error(e.pos, "query pattern cannot use const " + quoted(e.text));
          ok = false;
        }
        q.pattern.emplace_back();
      } else if (e.kind == ast::Expr::Kind::Add) {
        error(e.pos, "query pattern arguments must be literals, variables or '_'");
        ok = false;
      } else {
        auto v = literal(e, rel.arg_type(i));
        if (!v) ok = false;
        q.pattern.push_back(v);
      }
    }
    if (ok) out_->queries.push_back(std::move(q));
  }

  const ast::Program& src_;
  std::shared_ptr<TypedProgram> out_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, const ast::TypeDecl*> type_decls_;
  std::map<std::string, const ast::LatticeDecl*> lattice_decls_;
  std::map<std::string, const ast::RelationDecl*, std::less<>> relation_decls_;
  std::set<std::string, std::less<>> broken_relations_;
  std::map<std::string, std::optional<Type>> type_memo_;
  std::map<std::string, LatticeRef> lattice_memo_;
  std::set<std::string> resolving_;
  bool rules_failed_ = false;
};

// ---------------------------------------------------------------------------

void RuleChecker::register_vars(const ast::Expr& e) {
  if (e.kind == ast::Expr::Kind::Name) {
    if (v_.const_index(e.text) || slots_.count(e.text)) return;
    slots_[e.text] = static_cast<int>(names_.size());
    names_.push_back(e.text);
    return;
  }
  for (const auto& o : e.operands) register_vars(o);
}

void RuleChecker::names_in(const ast::Expr& e, std::vector<int>& out) const {
  if (e.kind == ast::Expr::Kind::Name) {
    if (auto s = slot_of(e.text); s && !v_.const_index(e.text)) out.push_back(*s);
    return;
  }
  for (const auto& o : e.operands) names_in(o, out);
}

bool RuleChecker::learn(const ast::Expr& e, const Type& t) {
  using K = ast::Expr::Kind;
  if (e.kind == K::Name) {
    auto s = slot_of(e.text);
    if (!s || v_.const_index(e.text) || types_[*s]) return false;
    types_[*s] = t;
    return true;
  }
  bool changed = false;
  if (e.kind == K::Add && t.is_numeric()) {
    for (const auto& o : e.operands) changed |= learn(o, t);
  } else if (e.kind == K::SetLit && t.kind == Type::Kind::Set) {
    for (const auto& o : e.operands) changed |= learn(o, t.params[0]);
  }
  return changed;
}

bool RuleChecker::learn_atom(const ast::Atom& a) {
  const RelationInfo* rel = v_.relation_info(a.relation);
  if (!rel || v_.relation_broken(a.relation) || holes(a.shape) != rel->arity()) return false;
  bool changed = false;
  for (std::size_t i = 0; i < a.args.size(); ++i) changed |= learn(a.args[i], rel->arg_type(i));
  return changed;
}

std::optional<Type> RuleChecker::infer(const ast::Expr& e) const {
  using K = ast::Expr::Kind;
  switch (e.kind) {
    case K::Name:
      if (auto c = v_.const_index(e.text)) return v_.const_info(*c).type;
      if (auto s = slot_of(e.text)) return types_[*s];
      return std::nullopt;
    case K::InfLit: return Type::nat();
    case K::BoolLit: return Type::boolean();
    case K::Add: {
      auto l = infer(e.operands[0]);
      return l ? l : infer(e.operands[1]);
    }
    case K::SetLit:
      for (const auto& o : e.operands) {
        if (auto t = infer(o)) return Type::set(*t);
      }
      return std::nullopt;
    default: return std::nullopt;
  }
}

void RuleChecker::infer_all() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : r_.body) {
      changed |= std::visit(overloaded{
                                [&](const ast::Atom& a) { return learn_atom(a); },
                                [&](const ast::Constraint& c) {
                                  auto l = infer(c.lhs);
                                  auto r = infer(c.rhs);
                                  if (l && !r) return learn(c.rhs, *l);
                                  if (r && !l) return learn(c.lhs, *r);
                                  return false;
                                },
                                [&](const ast::Forall& f) {
                                  bool ch = false;
                                  auto t = infer(f.collection);
                                  if (t && t->kind == Type::Kind::Set) {
                                    ch |= learn(ast::Expr::name(f.var), t->params[0]);
                                  }
                                  bool inner = learn_atom(f.inner);
                                  return ch || inner;
                                },
                            },
                            p);
    }
    for (const auto& h : r_.heads) changed |= learn_atom(h);
  }
}

// True when `slot` occurs in no body premise and only in lattice positions
// of heads.
bool RuleChecker::head_lattice_only(int slot) const {
  std::vector<int> seen;
  for (const auto& p : r_.body) {
    std::visit(overloaded{
                   [&](const ast::Atom& a) {
                     for (const auto& e : a.args) names_in(e, seen);
                   },
                   [&](const ast::Constraint&) {},
                   [&](const ast::Forall& f) {
                     names_in(f.collection, seen);
                     for (const auto& e : f.inner.args) names_in(e, seen);
                     if (slot_of(f.var) == slot) seen.push_back(slot);
                   },
               },
               p);
  }
  if (std::find(seen.begin(), seen.end(), slot) != seen.end()) return false;
  bool in_lattice = false;
  for (const auto& h : r_.heads) {
    const RelationInfo* rel = v_.relation_info(h.relation);
    if (!rel) return false;
    for (std::size_t i = 0; i < h.args.size(); ++i) {
      std::vector<int> vs;
      names_in(h.args[i], vs);
      if (std::find(vs.begin(), vs.end(), slot) == vs.end()) continue;
      if (i < rel->key_arity() || !is_plain_name(h.args[i])) return false;
      in_lattice = true;
    }
  }
  return in_lattice;
}

// For `x = e`, `e <= v` and `v >= e`: the variable this constraint would
// assign once the other side is bound, if any.
std::optional<int> RuleChecker::assignment_target(const ast::Constraint& c) const {
  auto unbound_var = [&](const ast::Expr& e) -> std::optional<int> {
    if (!is_plain_name(e) || v_.const_index(e.text)) return std::nullopt;
    auto s = slot_of(e.text);
    if (!s || bound_[*s]) return std::nullopt;
    return s;
  };
  auto side_bound = [&](const ast::Expr& e) {
    std::vector<int> vs;
    names_in(e, vs);
    return std::all_of(vs.begin(), vs.end(), [&](int s) { return bound_[s]; });
  };
  if (c.op == ast::CmpOp::Eq) {
    if (auto s = unbound_var(c.lhs); s && side_bound(c.rhs)) return s;
    if (auto s = unbound_var(c.rhs); s && side_bound(c.lhs)) return s;
    return std::nullopt;
  }
  if (c.op == ast::CmpOp::Le) {
    if (auto s = unbound_var(c.rhs); s && side_bound(c.lhs) && head_lattice_only(*s)) return s;
  }
  if (c.op == ast::CmpOp::Ge) {
    if (auto s = unbound_var(c.lhs); s && side_bound(c.rhs) && head_lattice_only(*s)) return s;
  }
  return std::nullopt;
}

void RuleChecker::walk() {
  const std::size_t n = r_.body.size();
  std::vector<bool> placed(n, false);
  auto all_bound = [&](const std::vector<int>& vs) {
    return std::all_of(vs.begin(), vs.end(), [&](int s) { return bound_[s]; });
  };
  while (true) {
    bool progress = false;
    for (std::size_t i = 0; i < n && !progress; ++i) {
      if (placed[i]) continue;
      const auto& p = r_.body[i];
      if (const auto* a = std::get_if<ast::Atom>(&p)) {
        const RelationInfo* rel = v_.relation_info(a->relation);
        std::size_t key_arity = rel ? rel->key_arity() : a->args.size();
        for (std::size_t k = 0; k < a->args.size(); ++k) {
          const auto& e = a->args[k];
          if (!is_plain_name(e) || v_.const_index(e.text)) continue;
          int s = *slot_of(e.text);
          if (!bound_[s]) {
            bound_[s] = true;
            derived_[s] = k >= key_arity;
          }
        }
        progress = true;
      } else if (const auto* c = std::get_if<ast::Constraint>(&p)) {
        std::vector<int> vs;
        names_in(c->lhs, vs);
        names_in(c->rhs, vs);
        if (auto target = assignment_target(*c)) {
          bool lhs_is_target = is_plain_name(c->lhs) && !v_.const_index(c->lhs.text) &&
                               slot_of(c->lhs.text) == *target;
          std::vector<int> src;
          names_in(lhs_is_target ? c->rhs : c->lhs, src);
          bound_[*target] = true;
          derived_[*target] =
              std::any_of(src.begin(), src.end(), [&](int s) { return derived_[s]; });
          assigns_[i] = *target;
          progress = true;
        } else if (all_bound(vs)) {
          progress = true;
        }
      } else {
        const auto& f = std::get<ast::Forall>(p);
        std::vector<int> vs;
        names_in(f.collection, vs);
        int loop = *slot_of(f.var);
        for (const auto& e : f.inner.args) names_in(e, vs);
        vs.erase(std::remove(vs.begin(), vs.end(), loop), vs.end());
        if (all_bound(vs)) progress = true;
      }
      if (progress) {
        placed[i] = true;
        order_.push_back(static_cast<int>(i));
      }
    }
    if (!progress) break;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (placed[i]) continue;
    failed_ = true;
    std::vector<int> vs;
    SourcePos pos;
    std::string what;
    if (const auto* c = std::get_if<ast::Constraint>(&r_.body[i])) {
      names_in(c->lhs, vs);
      names_in(c->rhs, vs);
      pos = c->pos;
      what = "constraint";
    } else {
      const auto& f = std::get<ast::Forall>(r_.body[i]);
      names_in(f.collection, vs);
      for (const auto& e : f.inner.args) names_in(e, vs);
      int loop = *slot_of(f.var);
      vs.erase(std::remove(vs.begin(), vs.end(), loop), vs.end());
      pos = f.pos;
      what = "forall";
    }
    for (int s : vs) {
      if (!bound_[s]) {
        v_.error(pos, what + " reads unbound variable " + quoted(names_[s]));
        break;
      }
    }
  }
}

std::optional<TExpr> RuleChecker::build(const ast::Expr& e, const std::optional<Type>& expected,
                                        Ctx ctx) {
  using K = ast::Expr::Kind;
  auto mismatch = [&](const Type& found) {
    v_.error(e.pos, "type mismatch: expected " + to_string(*expected) + ", found " + to_string(found));
  };
  TExpr out;
  switch (e.kind) {
    case K::Wildcard:
      if (ctx != Ctx::BodyArg) {
        v_.error(e.pos, "wildcard '_' is only allowed in premise arguments");
        return std::nullopt;
      }
      out.kind = TExpr::Kind::Wildcard;
      out.type = expected.value_or(Type::symbol());
      return out;
    case K::Name: {
      if (auto c = v_.const_index(e.text)) {
        out.kind = TExpr::Kind::ConstRef;
        out.slot = *c;
        out.type = v_.const_info(*c).type;
      } else {
        int s = *slot_of(e.text);
        if (!types_[s]) {
          v_.error(e.pos, "cannot infer the type of variable " + quoted(e.text));
          return std::nullopt;
        }
        out.kind = TExpr::Kind::Var;
        out.slot = s;
        out.type = *types_[s];
      }
      if (expected && !(out.type == *expected)) {
        mismatch(out.type);
        return std::nullopt;
      }
      return out;
    }
    case K::Add: {
      if (ctx == Ctx::BodyArg) {
        v_.error(e.pos, "arithmetic is not allowed in premise arguments; bind a variable and add a constraint");
        return std::nullopt;
      }
      auto t = expected ? expected : infer(e);
      if (!t) t = Type::integer();
      if (!t->is_numeric()) {
        v_.error(e.pos, "'+' needs Int or Nat operands, found " + to_string(*t));
        return std::nullopt;
      }
      auto l = build(e.operands[0], t, ctx);
      auto r = build(e.operands[1], t, ctx);
      if (!l || !r) return std::nullopt;
      out.kind = TExpr::Kind::Add;
      out.type = *t;
      out.operands = {std::move(*l), std::move(*r)};
      return out;
    }
    case K::SetLit: {
      auto t = expected ? expected : infer(e);
      if (!t || t->kind != Type::Kind::Set) {
        if (t) mismatch(*t);
        else v_.error(e.pos, "cannot infer the element type of set literal");
        return std::nullopt;
      }
      out.kind = TExpr::Kind::SetOf;
      out.type = *t;
      bool all_const = true;
      for (const auto& o : e.operands) {
        auto b = build(o, t->params[0], ctx == Ctx::BodyArg ? Ctx::Constraint : ctx);
        if (!b) return std::nullopt;
        all_const &= b->kind == TExpr::Kind::Const;
        out.operands.push_back(std::move(*b));
      }
      if (all_const) {
        std::vector<Value> vs;
        for (const auto& o : out.operands) vs.push_back(o.value);
        out.kind = TExpr::Kind::Const;
        out.value = Value::set(std::move(vs));
        out.operands.clear();
      } else if (ctx == Ctx::BodyArg) {
        v_.error(e.pos, "set literal in a premise argument must be constant");
        return std::nullopt;
      }
      return out;
    }
    default: {
      Type t = expected ? *expected : e.kind == K::InfLit ? Type::nat()
                                  : e.kind == K::StringLit ? Type::symbol()
                                  : e.kind == K::BoolLit   ? Type::boolean()
                                                           : Type::integer();
      auto v = v_.literal(e, t);
      if (!v) return std::nullopt;
      out.kind = TExpr::Kind::Const;
      out.type = t;
      out.value = *v;
      return out;
    }
  }
}

std::optional<TAtom> RuleChecker::build_atom(const ast::Atom& a, bool head) {
  if (!v_.relation_declared(a.relation)) {
    v_.error(a.pos, "unknown relation " + quoted(a.relation));
    return std::nullopt;
  }
  if (v_.relation_broken(a.relation)) return std::nullopt;
  const RelationInfo& rel = *v_.relation_info(a.relation);
  if (a.shape != rel.shape) {
    if (holes(a.shape) != rel.arity()) {
      v_.error(a.pos, "arity mismatch for " + quoted(rel.name) + ": expected " +
                          std::to_string(rel.arity()) + " arguments, found " +
                          std::to_string(holes(a.shape)));
    } else {
      v_.error(a.pos, "separator mismatch for " + quoted(rel.name) + ": expected " +
                          quoted(shape_text(rel.name, rel.shape)));
    }
    return std::nullopt;
  }
  TAtom out;
  out.relation = v_.relation_id(a.relation);
  out.pos = a.pos;
  bool ok = true;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    auto b = build(a.args[i], rel.arg_type(i), head ? Ctx::HeadArg : Ctx::BodyArg);
    if (!b) {
      ok = false;
      continue;
    }
    out.args.push_back(std::move(*b));
  }
  if (!ok) return std::nullopt;
  check_keys(a, out);
  return out;
}

void RuleChecker::check_keys(const ast::Atom& a, const TAtom& t) {
  const RelationInfo& rel = *v_.relation_info(a.relation);
  for (std::size_t i = 0; i < rel.key_arity(); ++i) {
    std::vector<int> vs;
    t.args[i].collect_vars(vs);
    for (int s : vs) {
      if (bound_[s] && derived_[s]) {
        v_.error(a.args[i].pos, "lattice value " + quoted(names_[s]) + " used as a key");
        failed_ = true;
        return;
      }
    }
  }
}

std::optional<TRule> RuleChecker::run() {
  for (const auto& p : r_.body) {
    std::visit(overloaded{
                   [&](const ast::Atom& a) { register_atom(a); },
                   [&](const ast::Constraint& c) {
                     register_vars(c.lhs);
                     register_vars(c.rhs);
                   },
                   [&](const ast::Forall& f) {
                     register_vars(ast::Expr::name(f.var));
                     register_vars(f.collection);
                     register_atom(f.inner);
                   },
               },
               p);
  }
  for (const auto& h : r_.heads) register_atom(h);
  types_.assign(names_.size(), std::nullopt);
  bound_.assign(names_.size(), false);
  derived_.assign(names_.size(), false);

  for (std::size_t i = 0; i < r_.body.size(); ++i) {
    const auto* f = std::get_if<ast::Forall>(&r_.body[i]);
    if (!f) continue;
    int loop = *slot_of(f->var);
    std::vector<int> outside;
    for (std::size_t j = 0; j < r_.body.size(); ++j) {
      if (j == i) {
        names_in(f->collection, outside);
        continue;
      }
      std::visit(overloaded{
                     [&](const ast::Atom& a) {
                       for (const auto& e : a.args) names_in(e, outside);
                     },
                     [&](const ast::Constraint& c) {
                       names_in(c.lhs, outside);
                       names_in(c.rhs, outside);
                     },
                     [&](const ast::Forall& g) {
                       if (auto s = slot_of(g.var)) outside.push_back(*s);
                       names_in(g.collection, outside);
                       for (const auto& e : g.inner.args) names_in(e, outside);
                     },
                 },
                 r_.body[j]);
    }
    for (const auto& h : r_.heads) {
      for (const auto& e : h.args) names_in(e, outside);
    }
    if (std::find(outside.begin(), outside.end(), loop) != outside.end()) {
      v_.error(f->pos, "forall variable " + quoted(f->var) + " is also used outside its forall");
      return std::nullopt;
    }
  }

  infer_all();
  walk();

  TRule rule;
  rule.anonymous = !r_.name;
  rule.name = r_.name ? *r_.name : "rule@" + std::to_string(r_.pos.line);
  rule.pos = r_.pos;
  rule.binding_order = order_;

  for (std::size_t i = 0; i < r_.body.size(); ++i) {
    const auto& p = r_.body[i];
    if (const auto* a = std::get_if<ast::Atom>(&p)) {
      auto t = build_atom(*a, false);
      if (!t) {
        failed_ = true;
        continue;
      }
      rule.body.emplace_back(std::move(*t));
    } else if (const auto* c = std::get_if<ast::Constraint>(&p)) {
      TConstraint tc;
      tc.op = c->op;
      tc.pos = c->pos;
      if (auto it = assigns_.find(i); it != assigns_.end()) {
        int target = it->second;
        bool lhs_is_target = is_plain_name(c->lhs) && slot_of(c->lhs.text) == target &&
                             !v_.const_index(c->lhs.text);
        const ast::Expr& src = lhs_is_target ? c->rhs : c->lhs;
        auto b = build(src, types_[target], Ctx::Constraint);
        if (!b) {
          failed_ = true;
          continue;
        }
        tc.assign_slot = target;
        tc.lhs = std::move(*b);
      } else {
        auto t = infer(c->lhs);
        if (!t) t = infer(c->rhs);
        auto l = build(c->lhs, t, Ctx::Constraint);
        auto r = build(c->rhs, t, Ctx::Constraint);
        if (!l || !r) {
          failed_ = true;
          continue;
        }
        if (c->op != ast::CmpOp::Eq && !l->type.is_numeric()) {
          v_.error(c->pos, "ordering comparison needs Int or Nat operands, found " + to_string(l->type));
          failed_ = true;
          continue;
        }
        tc.lhs = std::move(*l);
        tc.rhs = std::move(*r);
      }
      rule.body.emplace_back(std::move(tc));
    } else {
      const auto& f = std::get<ast::Forall>(p);
      TForall tf;
      tf.pos = f.pos;
      tf.var_slot = *slot_of(f.var);
      auto coll = build(f.collection, std::nullopt, Ctx::Collection);
      if (coll && coll->type.kind != Type::Kind::Set) {
        v_.error(f.collection.pos, "forall needs a Set collection, found " + to_string(coll->type));
        coll.reset();
      }
      auto inner = build_atom(f.inner, false);
      if (!coll || !inner) {
        failed_ = true;
        continue;
      }
      tf.collection = std::move(*coll);
      tf.inner = std::move(*inner);
      rule.body.emplace_back(std::move(tf));
    }
  }

  for (const auto& h : r_.heads) {
    bool head_ok = true;
    std::vector<int> vs;
    for (const auto& e : h.args) names_in(e, vs);
    for (int s : vs) {
      if (!bound_[s]) {
        v_.error(h.pos, "unbound head variable " + quoted(names_[s]));
        head_ok = false;
        break;
      }
    }
    if (!head_ok) {
      failed_ = true;
      continue;
    }
    auto t = build_atom(h, true);
    if (!t) {
      failed_ = true;
      continue;
    }
    rule.heads.push_back(std::move(*t));
  }

  if (failed_) return std::nullopt;
  for (std::size_t s = 0; s < names_.size(); ++s) {
    rule.vars.push_back({names_[s], types_[s].value_or(Type::symbol()), derived_[s]});
  }
  return rule;
}

}  // namespace

ValidationResult validate(const ast::Program& p) { return Validator(p).run(); }

bool verify_range_restriction(const TRule& rule) {
  std::vector<bool> bound(rule.vars.size(), false);
  std::vector<bool> seen(rule.body.size(), false);
  if (rule.binding_order.size() != rule.body.size()) return false;
  auto all_bound = [&](const TExpr& e, int except = -1) {
    std::vector<int> vs;
    e.collect_vars(vs);
    return std::all_of(vs.begin(), vs.end(), [&](int s) { return s == except || bound[s]; });
  };
  for (int idx : rule.binding_order) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= rule.body.size() || seen[idx]) return false;
    seen[idx] = true;
    const auto& p = rule.body[idx];
    if (const auto* a = std::get_if<TAtom>(&p)) {
      for (const auto& arg : a->args) {
        if (arg.kind == TExpr::Kind::Add || arg.kind == TExpr::Kind::SetOf) return false;
        if (arg.is_var()) bound[arg.slot] = true;
      }
    } else if (const auto* c = std::get_if<TConstraint>(&p)) {
      if (c->assign_slot >= 0) {
        if (bound[c->assign_slot] || !all_bound(c->lhs)) return false;
        bound[c->assign_slot] = true;
      } else if (!all_bound(c->lhs) || !all_bound(c->rhs)) {
        return false;
      }
    } else {
      const auto& f = std::get<TForall>(p);
      if (!all_bound(f.collection)) return false;
      for (const auto& arg : f.inner.args) {
        if (!all_bound(arg, f.var_slot)) return false;
      }
    }
  }
  for (const auto& h : rule.heads) {
    for (const auto& arg : h.args) {
      if (!all_bound(arg)) return false;
    }
  }
  return true;
}

}  // namespace fpop
