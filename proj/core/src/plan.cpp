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

#include "fpop/plan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace fpop {

bool DependencyGraph::produces_edge(int rule, int relation) const {
  return std::find(produces.begin(), produces.end(), ProductionEdge{rule, relation}) != produces.end();
}

DependencyGraph build_dependency_graph(const TypedProgram& p) {
  DependencyGraph g;
  for (std::size_t r = 0; r < p.rules.size(); ++r) {
    const TRule& rule = p.rules[r];
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
      if (const auto* a = std::get_if<TAtom>(&rule.body[i])) {
        g.consumes.push_back({a->relation, static_cast<int>(r), static_cast<int>(i), false});
      } else if (const auto* f = std::get_if<TForall>(&rule.body[i])) {
        g.consumes.push_back({f->inner.relation, static_cast<int>(r), static_cast<int>(i), true});
      }
    }
    for (const auto& h : rule.heads) {
      ProductionEdge e{static_cast<int>(r), h.relation};
      if (!g.produces_edge(e.rule, e.relation)) g.produces.push_back(e);
    }
  }
  return g;
}

int IndexPlan::find(int relation, const std::vector<int>& columns) const {
  if (relation < 0 || static_cast<std::size_t>(relation) >= indexes.size()) return -1;
  const auto& list = indexes[relation];
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i].size() < columns.size()) continue;
    std::vector<int> prefix(list[i].begin(), list[i].begin() + static_cast<long>(columns.size()));
    std::sort(prefix.begin(), prefix.end());
    if (prefix == columns) return static_cast<int>(i);
  }
  return -1;
}

namespace {

void expr_vars(const TExpr& e, std::vector<int>& out) { e.collect_vars(out); }

/// Greedy construction of one variant's pipeline.
class VariantBuilder {
 public:
  VariantBuilder(const TypedProgram& p, const TRule& rule, Variant& v)
      : p_(p), rule_(rule), v_(v), bound_(rule.vars.size(), false), placed_(rule.body.size(), false) {}

  void pivot_atom(int premise) {
    placed_[premise] = true;
    v_.join_order.push_back(premise);
    bind_atom(std::get<TAtom>(rule_.body[premise]));
  }

  void bind(int slot) { bound_[slot] = true; }

  void member_lookup(int premise, int column) {
    const auto& a = std::get<TAtom>(rule_.body[premise]);
    PlanStep s;
    s.kind = PlanStep::Kind::MemberLookup;
    s.premise = premise;
    s.member_column = column;
    s.bound_columns = bound_key_columns(a);
    v_.steps.push_back(std::move(s));
    placed_[premise] = true;
    v_.join_order.push_back(premise);
    bind_atom(a);
  }

  /// Emits a MemberFilter step as soon as `collection` is bound.
  void want_member_filter(int forall_premise) { filter_premise_ = forall_premise; }

  void run() {
    while (true) {
      place_ready();
      int best = -1;
      std::size_t best_bound = 0;
      for (std::size_t i = 0; i < rule_.body.size(); ++i) {
        if (placed_[i]) continue;
        const auto* a = std::get_if<TAtom>(&rule_.body[i]);
        if (!a) continue;
        std::size_t n = bound_key_columns(*a).size();
        if (best < 0 || n > best_bound) {
          best = static_cast<int>(i);
          best_bound = n;
        }
      }
      if (best < 0) break;
      const auto& a = std::get<TAtom>(rule_.body[best]);
      PlanStep s;
      s.kind = PlanStep::Kind::Join;
      s.premise = best;
      s.bound_columns = bound_key_columns(a);
      v_.steps.push_back(std::move(s));
      placed_[best] = true;
      v_.join_order.push_back(best);
      bind_atom(a);
    }
    place_ready();
  }

 private:
  bool all_bound(const TExpr& e, int except = -1) const {
    std::vector<int> vs;
    expr_vars(e, vs);
    return std::all_of(vs.begin(), vs.end(), [&](int s) { return s == except || bound_[s]; });
  }

  std::vector<int> bound_key_columns(const TAtom& a) const {
    std::vector<int> cols;
    std::size_t keys = p_.relations[a.relation].key_arity();
    for (std::size_t i = 0; i < keys; ++i) {
      const TExpr& e = a.args[i];
      bool b = e.kind == TExpr::Kind::Const || e.kind == TExpr::Kind::ConstRef ||
               (e.is_var() && bound_[e.slot]);
      if (b) cols.push_back(static_cast<int>(i));
    }
    return cols;
  }

  void bind_atom(const TAtom& a) {
    for (const auto& e : a.args) {
      if (e.is_var()) bound_[e.slot] = true;
    }
  }

  void place_ready() {
    bool progress = true;
    while (progress) {
      progress = false;
      if (filter_premise_ >= 0 && all_bound(std::get<TForall>(rule_.body[filter_premise_]).collection)) {
        PlanStep s;
        s.kind = PlanStep::Kind::MemberFilter;
        s.premise = filter_premise_;
        v_.steps.push_back(std::move(s));
        filter_premise_ = -1;
        progress = true;
      }
      for (std::size_t i = 0; i < rule_.body.size() && !progress; ++i) {
        if (placed_[i]) continue;
        PlanStep s;
        s.premise = static_cast<int>(i);
        if (const auto* c = std::get_if<TConstraint>(&rule_.body[i])) {
          if (c->assign_slot >= 0) {
            if (!all_bound(c->lhs)) continue;
            if (bound_[c->assign_slot]) {
              TConstraint chk;
              chk.op = ast::CmpOp::Eq;
              chk.pos = c->pos;
              chk.lhs.kind = TExpr::Kind::Var;
              chk.lhs.slot = c->assign_slot;
              chk.lhs.type = rule_.vars[c->assign_slot].type;
              chk.rhs = c->lhs;
              s.kind = PlanStep::Kind::Check;
              s.check = std::move(chk);
            } else {
              s.kind = PlanStep::Kind::Assign;
              bound_[c->assign_slot] = true;
            }
          } else {
            if (!all_bound(c->lhs) || !all_bound(c->rhs)) continue;
            s.kind = PlanStep::Kind::Check;
          }
        } else if (const auto* f = std::get_if<TForall>(&rule_.body[i])) {
          if (!all_bound(f->collection)) continue;
          bool inner = std::all_of(f->inner.args.begin(), f->inner.args.end(),
                                   [&](const TExpr& e) { return all_bound(e, f->var_slot); });
          if (!inner) continue;
          s.kind = PlanStep::Kind::Forall;
        } else {
          continue;
        }
        v_.steps.push_back(std::move(s));
        placed_[i] = true;
        if (std::find(v_.join_order.begin(), v_.join_order.end(), static_cast<int>(i)) ==
            v_.join_order.end()) {
          v_.join_order.push_back(static_cast<int>(i));
        }
        progress = true;
      }
    }
  }

  const TypedProgram& p_;
  const TRule& rule_;
  Variant& v_;
  std::vector<bool> bound_;
  std::vector<bool> placed_;
  int filter_premise_ = -1;
};

// Body atom and key column holding `slot` as a plain variable, if any.
std::optional<std::pair<int, int>> key_column_of(const TypedProgram& p, const TRule& rule, int slot) {
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    const auto* a = std::get_if<TAtom>(&rule.body[i]);
    if (!a) continue;
    std::size_t keys = p.relations[a->relation].key_arity();
    for (std::size_t c = 0; c < keys; ++c) {
      if (a->args[c].is_var() && a->args[c].slot == slot) {
        return std::make_pair(static_cast<int>(i), static_cast<int>(c));
      }
    }
  }
  return std::nullopt;
}

Variant forall_variant(const TypedProgram& p, const TRule& rule, int r, int premise) {
  const auto& f = std::get<TForall>(rule.body[premise]);
  Variant v;
  v.rule = r;
  v.pivot_premise = premise;
  v.trigger_relation = f.inner.relation;
  const auto& inner_rel = p.relations[f.inner.relation];
  bool loop_in_key = false;
  for (std::size_t c = 0; c < inner_rel.key_arity(); ++c) {
    if (f.inner.args[c].is_var() && f.inner.args[c].slot == f.var_slot) loop_in_key = true;
  }
  VariantBuilder b(p, rule, v);
  if (!loop_in_key) {
    v.kind = Variant::Kind::Rescan;
    b.run();
    return v;
  }
  v.kind = Variant::Kind::Member;
  v.join_order.push_back(premise);
  b.bind(f.var_slot);
  std::optional<std::pair<int, int>> source;
  if (f.collection.is_var()) source = key_column_of(p, rule, f.collection.slot);
  if (source) {
    b.member_lookup(source->first, source->second);
  } else {
    b.want_member_filter(premise);
  }
  b.run();
  return v;
}

}  // namespace

std::vector<Variant> normalize(const TypedProgram& p) {
  std::vector<Variant> out;
  for (std::size_t r = 0; r < p.rules.size(); ++r) {
    const TRule& rule = p.rules[r];
    int rid = static_cast<int>(r);
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
      int premise = static_cast<int>(i);
      if (const auto* a = std::get_if<TAtom>(&rule.body[i])) {
        Variant v;
        v.rule = rid;
        v.kind = Variant::Kind::Delta;
        v.pivot_premise = premise;
        v.trigger_relation = a->relation;
        VariantBuilder b(p, rule, v);
        b.pivot_atom(premise);
        b.run();
        out.push_back(std::move(v));
      } else if (std::holds_alternative<TForall>(rule.body[i])) {
        out.push_back(forall_variant(p, rule, rid, premise));
      }
    }
    if (rule.atom_count() == 0) {
      Variant v;
      v.rule = rid;
      v.kind = Variant::Kind::Init;
      VariantBuilder b(p, rule, v);
      b.run();
      out.push_back(std::move(v));
    }
  }
  for (std::size_t r = 0; r < p.rules.size(); ++r) {
    Variant v;
    v.rule = static_cast<int>(r);
    v.kind = Variant::Kind::Full;
    VariantBuilder b(p, p.rules[r], v);
    b.run();
    out.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

IndexPlan plan_indexes(const TypedProgram& p, std::span<const Variant> variants) {
  IndexPlan plan;
  plan.indexes.resize(p.relations.size());
  plan.membership.resize(p.relations.size());
  std::vector<std::set<std::vector<int>>> required(p.relations.size());
  for (const auto& v : variants) {
    const TRule& rule = p.rules[v.rule];
    for (const auto& s : v.steps) {
      if (s.kind != PlanStep::Kind::Join && s.kind != PlanStep::Kind::MemberLookup) continue;
      int rel = std::get<TAtom>(rule.body[s.premise]).relation;
      if (s.kind == PlanStep::Kind::MemberLookup) {
        auto& m = plan.membership[rel];
        if (std::find(m.begin(), m.end(), s.member_column) == m.end()) m.push_back(s.member_column);
        continue;
      }
      std::size_t keys = p.relations[rel].key_arity();
      if (!s.bound_columns.empty() && s.bound_columns.size() < keys) required[rel].insert(s.bound_columns);
    }
  }
  for (std::size_t rel = 0; rel < required.size(); ++rel) {
    std::map<int, int> freq;
    for (const auto& cols : required[rel]) {
      for (int c : cols) ++freq[c];
    }
    std::vector<std::vector<int>> sets(required[rel].begin(), required[rel].end());
    std::stable_sort(sets.begin(), sets.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (const auto& cols : sets) {
      if (plan.find(static_cast<int>(rel), cols) >= 0) continue;
      std::vector<int> ordered = cols;
      std::stable_sort(ordered.begin(), ordered.end(),
                       [&](int a, int b) { return freq[a] > freq[b]; });
      plan.indexes[rel].push_back(std::move(ordered));
    }
    std::sort(plan.membership[rel].begin(), plan.membership[rel].end());
  }
  return plan;
}

std::vector<Diagnostic> attach_priorities(const TypedProgram& p, std::vector<Variant>& variants) {
  std::vector<Diagnostic> diags;
  for (const auto& o : p.orders) {
    std::vector<int> vs;
    o.priority.collect_vars(vs);
    bool any_at_pivot = false;
    for (auto& v : variants) {
      if (v.rule != o.rule) continue;
      PrioritySpec spec{o.priority, o.direction, false};
      if (v.kind == Variant::Kind::Delta) {
        const auto& pivot = std::get<TAtom>(p.rules[v.rule].body[v.pivot_premise]);
        spec.at_pivot = std::all_of(vs.begin(), vs.end(), [&](int s) {
          return std::any_of(pivot.args.begin(), pivot.args.end(),
                             [&](const TExpr& e) { return e.is_var() && e.slot == s; });
        });
      }
      any_at_pivot |= spec.at_pivot;
      v.priority = std::move(spec);
    }
    if (!any_at_pivot) {
      diags.push_back({o.pos, Severity::Error,
                       "order directive on '" + p.rules[o.rule].name +
                           "' reads variables that no single premise binds"});
    }
  }
  return diags;
}

Plan build_plan(std::shared_ptr<const TypedProgram> prog) {
  const TypedProgram& p = *prog;
  Plan plan;
  plan.program = prog;
  plan.graph = build_dependency_graph(p);
  std::vector<Variant> all = normalize(p);
  plan.indexes = plan_indexes(p, all);
  for (auto& v : all) {
    const TRule& rule = p.rules[v.rule];
    for (auto& s : v.steps) {
      if (s.kind != PlanStep::Kind::Join) continue;
      int rel = std::get<TAtom>(rule.body[s.premise]).relation;
      std::size_t keys = p.relations[rel].key_arity();
      if (!s.bound_columns.empty() && s.bound_columns.size() < keys) {
        s.index = plan.indexes.find(rel, s.bound_columns);
      }
    }
  }
  plan.diagnostics = attach_priorities(p, all);
  plan.triggered_by.resize(p.relations.size());
  plan.relation_priority.assign(p.relations.size(), -1);
  for (auto& v : all) {
    if (v.kind == Variant::Kind::Full) {
      v.id = static_cast<int>(plan.full.size());
      plan.full.push_back(std::move(v));
      continue;
    }
    v.id = static_cast<int>(plan.variants.size());
    if (v.kind == Variant::Kind::Init) {
      plan.init_variants.push_back(v.id);
    } else {
      plan.triggered_by[v.trigger_relation].push_back(v.id);
      if (v.priority && v.priority->at_pivot && plan.relation_priority[v.trigger_relation] < 0) {
        plan.relation_priority[v.trigger_relation] = v.id;
      }
    }
    plan.variants.push_back(std::move(v));
  }
  return plan;
}

std::optional<std::string> check_plan(const Plan& plan) {
  const TypedProgram& p = *plan.program;
  auto check_variant = [&](const Variant& v) -> std::optional<std::string> {
    const TRule& rule = p.rules[v.rule];
    std::string where = "variant " + std::to_string(v.id) + " of '" + rule.name + "'";
    std::vector<bool> bound(rule.vars.size(), false);
    auto reads_bound = [&](const TExpr& e, int except = -1) {
      std::vector<int> vs;
      e.collect_vars(vs);
      return std::all_of(vs.begin(), vs.end(), [&](int s) { return s == except || bound[s]; });
    };
    auto bind_atom = [&](const TAtom& a) {
      for (const auto& e : a.args) {
        if (e.is_var()) bound[e.slot] = true;
      }
    };
    auto key_columns_ok = [&](const TAtom& a, const std::vector<int>& cols) {
      std::size_t keys = p.relations[a.relation].key_arity();
      for (std::size_t c = 0; c < keys; ++c) {
        const TExpr& e = a.args[c];
        bool b = e.kind == TExpr::Kind::Const || e.kind == TExpr::Kind::ConstRef ||
                 (e.is_var() && bound[e.slot]);
        bool listed = std::find(cols.begin(), cols.end(), static_cast<int>(c)) != cols.end();
        if (b != listed) return false;
      }
      return true;
    };

    std::vector<int> covered;
    if (v.kind == Variant::Kind::Delta) {
      if (v.join_order.empty() || v.join_order.front() != v.pivot_premise) {
        return where + ": join order does not start with the pivot";
      }
      bind_atom(std::get<TAtom>(rule.body[v.pivot_premise]));
      covered.push_back(v.pivot_premise);
    } else if (v.kind == Variant::Kind::Member) {
      bound[std::get<TForall>(rule.body[v.pivot_premise]).var_slot] = true;
    }
    for (std::size_t i = 0; i < v.steps.size(); ++i) {
      const PlanStep& s = v.steps[i];
      std::string at = where + " step " + std::to_string(i);
      switch (s.kind) {
        case PlanStep::Kind::Join:
        case PlanStep::Kind::MemberLookup: {
          const auto& a = std::get<TAtom>(rule.body[s.premise]);
          if (!key_columns_ok(a, s.bound_columns)) return at + ": index key reads unbound columns";
          if (s.kind == PlanStep::Kind::MemberLookup &&
              !bound[std::get<TForall>(rule.body[v.pivot_premise]).var_slot]) {
            return at + ": member element unbound";
          }
          bind_atom(a);
          covered.push_back(s.premise);
          break;
        }
        case PlanStep::Kind::Check: {
          const TConstraint& c = s.check ? *s.check : std::get<TConstraint>(rule.body[s.premise]);
          if (!reads_bound(c.lhs) || !reads_bound(c.rhs)) return at + ": check reads unbound variable";
          covered.push_back(s.premise);
          break;
        }
        case PlanStep::Kind::Assign: {
          const auto& c = std::get<TConstraint>(rule.body[s.premise]);
          if (!reads_bound(c.lhs) || bound[c.assign_slot]) return at + ": bad assignment";
          bound[c.assign_slot] = true;
          covered.push_back(s.premise);
          break;
        }
        case PlanStep::Kind::Forall: {
          const auto& f = std::get<TForall>(rule.body[s.premise]);
          if (!reads_bound(f.collection)) return at + ": forall collection unbound";
          for (const auto& e : f.inner.args) {
            if (!reads_bound(e, f.var_slot)) return at + ": forall reads unbound variable";
          }
          covered.push_back(s.premise);
          break;
        }
        case PlanStep::Kind::MemberFilter: {
          const auto& f = std::get<TForall>(rule.body[s.premise]);
          if (!reads_bound(f.collection)) return at + ": member filter before collection is bound";
          break;
        }
      }
    }
    std::sort(covered.begin(), covered.end());
    std::vector<int> want(rule.body.size());
    for (std::size_t i = 0; i < want.size(); ++i) want[i] = static_cast<int>(i);
    if (covered != want) return where + ": premises not covered exactly once";
    for (const auto& h : rule.heads) {
      for (const auto& e : h.args) {
        if (!reads_bound(e)) return where + ": head reads unbound variable";
      }
    }
    return std::nullopt;
  };
  for (const auto& v : plan.variants) {
    if (auto err = check_variant(v)) return err;
  }
  for (const auto& v : plan.full) {
    if (auto err = check_variant(v)) return err;
  }
  return std::nullopt;
}

namespace {

std::string expr_text(const TExpr& e, const TRule& rule, const TypedProgram& p) {
  switch (e.kind) {
    case TExpr::Kind::Var: return rule.vars[e.slot].name;
    case TExpr::Kind::Const: return to_display_string(e.value);
    case TExpr::Kind::ConstRef: return p.consts[e.slot].name;
    case TExpr::Kind::Wildcard: return "_";
    case TExpr::Kind::Add:
      return expr_text(e.operands[0], rule, p) + " + " + expr_text(e.operands[1], rule, p);
    case TExpr::Kind::SetOf: {
      std::string s = "{";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) s += ", ";
        s += expr_text(e.operands[i], rule, p);
      }
      return s + "}";
    }
  }
  return "?";
}

const char* kind_name(Variant::Kind k) {
  switch (k) {
    case Variant::Kind::Delta: return "delta";
    case Variant::Kind::Member: return "member";
    case Variant::Kind::Rescan: return "rescan";
    case Variant::Kind::Init: return "init";
    case Variant::Kind::Full: return "full";
  }
  return "?";
}

const char* step_name(PlanStep::Kind k) {
  switch (k) {
    case PlanStep::Kind::Join: return "join";
    case PlanStep::Kind::Check: return "check";
    case PlanStep::Kind::Assign: return "assign";
    case PlanStep::Kind::Forall: return "forall";
    case PlanStep::Kind::MemberLookup: return "member_lookup";
    case PlanStep::Kind::MemberFilter: return "member_filter";
  }
  return "?";
}

nlohmann::json variant_json(const Plan& plan, const Variant& v) {
  const TypedProgram& p = *plan.program;
  const TRule& rule = p.rules[v.rule];
  nlohmann::json j;
  j["id"] = v.id;
  j["rule"] = rule.name;
  j["kind"] = kind_name(v.kind);
  if (v.pivot_premise >= 0) j["pivot"] = v.pivot_premise;
  if (v.trigger_relation >= 0) j["trigger"] = p.relations[v.trigger_relation].name;
  j["join_order"] = v.join_order;
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : v.steps) {
    nlohmann::json js;
    js["kind"] = step_name(s.kind);
    js["premise"] = s.premise;
    if (s.kind == PlanStep::Kind::Join || s.kind == PlanStep::Kind::MemberLookup) {
      const auto& a = std::get<TAtom>(rule.body[s.premise]);
      const auto& rel = p.relations[a.relation];
      js["relation"] = rel.name;
      js["bound_columns"] = s.bound_columns;
      if (s.kind == PlanStep::Kind::MemberLookup) {
        js["member_column"] = s.member_column;
      } else if (s.bound_columns.empty()) {
        js["access"] = "scan";
      } else if (s.bound_columns.size() == rel.key_arity()) {
        js["access"] = "primary";
      } else {
        js["access"] = plan.indexes.indexes[a.relation].at(s.index);
      }
    }
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  nlohmann::json heads = nlohmann::json::array();
  for (const auto& h : rule.heads) {
    nlohmann::json jh;
    jh["relation"] = p.relations[h.relation].name;
    std::vector<std::string> args;
    for (const auto& e : h.args) args.push_back(expr_text(e, rule, p));
    jh["args"] = args;
    heads.push_back(std::move(jh));
  }
  j["heads"] = std::move(heads);
  if (v.priority) {
    j["priority"] = {{"expr", expr_text(v.priority->expr, rule, p)},
                     {"direction", v.priority->direction == ast::Direction::Asc ? "asc" : "desc"},
                     {"at_pivot", v.priority->at_pivot}};
  } else {
    j["priority"] = "fifo";
  }
  return j;
}

}  // namespace

std::string plan_to_json(const Plan& plan) {
  const TypedProgram& p = *plan.program;
  nlohmann::json j;
  nlohmann::json rels = nlohmann::json::array();
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    const auto& rel = p.relations[r];
    nlohmann::json jr;
    jr["name"] = rel.name;
    jr["key_arity"] = rel.key_arity();
    jr["arity"] = rel.arity();
    jr["lattice"] = rel.value_lattice->name();
    jr["indexes"] = plan.indexes.indexes[r];
    jr["membership_indexes"] = plan.indexes.membership[r];
    int pv = plan.relation_priority[r];
    jr["schedule"] = pv < 0 ? nlohmann::json("fifo") : nlohmann::json({{"variant", pv}});
    rels.push_back(std::move(jr));
  }
  j["relations"] = std::move(rels);
  nlohmann::json consumes = nlohmann::json::array();
  for (const auto& e : plan.graph.consumes) {
    consumes.push_back({{"relation", p.relations[e.relation].name},
                        {"rule", p.rules[e.rule].name},
                        {"premise", e.premise},
                        {"via_forall", e.via_forall}});
  }
  nlohmann::json produces = nlohmann::json::array();
  for (const auto& e : plan.graph.produces) {
    produces.push_back({{"rule", p.rules[e.rule].name}, {"relation", p.relations[e.relation].name}});
  }
  j["dependencies"] = {{"consumes", consumes}, {"produces", produces}};
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : plan.variants) vs.push_back(variant_json(plan, v));
  j["variants"] = std::move(vs);
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& v : plan.full) fs.push_back(variant_json(plan, v));
  j["full_variants"] = std::move(fs);
  return j.dump(2);
}

}  // namespace fpop
