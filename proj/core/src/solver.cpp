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

#include "fpop/solver.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <limits>
#include <mutex>
#include <queue>
#include <random>
#include <thread>

#include <json.hpp>

namespace fpop {

std::uint64_t SolverStats::total_firings() const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : rule_firings) n += v;
  return n;
}

std::uint64_t SolverStats::total_strict_updates() const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : strict_updates) n += v;
  return n;
}

std::uint64_t SolverStats::strict_updates_of(std::string_view relation) const {
  auto it = strict_updates.find(std::string(relation));
  return it == strict_updates.end() ? 0 : it->second;
}

std::uint64_t SolverStats::firings_of(std::string_view rule) const {
  auto it = rule_firings.find(std::string(rule));
  return it == rule_firings.end() ? 0 : it->second;
}

SolverStats& SolverStats::operator+=(const SolverStats& o) {
  popped += o.popped;
  discarded += o.discarded;
  fired += o.fired;
  naive_rounds += o.naive_rounds;
  wall_seconds += o.wall_seconds;
  for (const auto& [k, v] : o.rule_firings) rule_firings[k] += v;
  for (const auto& [k, v] : o.strict_updates) strict_updates[k] += v;
  return *this;
}

std::string SolverStats::to_json() const {
  nlohmann::json j;
  j["popped"] = popped;
  j["discarded"] = discarded;
  j["fired"] = fired;
  j["rule_firings"] = rule_firings;
  j["rule_firings_total"] = total_firings();
  j["strict_updates"] = strict_updates;
  j["strict_updates_total"] = total_strict_updates();
  j["naive_rounds"] = naive_rounds;
  j["wall_seconds"] = wall_seconds;
  return j.dump(2);
}

std::string fact_to_json(std::string_view relation, std::span<const Value> args) {
  return "{\"relation\":" + nlohmann::json(std::string(relation)).dump() +
         ",\"args\":" + to_canonical_string(args) + "}";
}

namespace {

struct Task {
  int relation = -1;
  Tuple key;
  Value value;
  int cls = 0;  // 0: first-in first-out, 1: ascending priority, 2: descending
  Value priority;
  std::uint64_t seq = 0;
};

/// Unprioritized tasks pop first, in arrival order; then ascending, then
/// descending priority classes, ties broken by arrival.
class WorkQueue {
 public:
  WorkQueue(Schedule s, std::uint64_t seed) : schedule_(s), rng_(seed) {}

  void push(Task t) {
    t.seq = next_seq_++;
    if (schedule_ == Schedule::Random) {
      random_.push_back(std::move(t));
    } else if (schedule_ == Schedule::Fifo || t.cls == 0) {
      fifo_.push_back(std::move(t));
    } else if (t.cls == 1) {
      asc_.push(std::move(t));
    } else {
      desc_.push(std::move(t));
    }
  }

  std::optional<Task> pop() {
    if (schedule_ == Schedule::Random) {
      if (random_.empty()) return std::nullopt;
      std::uniform_int_distribution<std::size_t> pick(0, random_.size() - 1);
      std::size_t i = pick(rng_);
      std::swap(random_[i], random_.back());
      Task t = std::move(random_.back());
      random_.pop_back();
      return t;
    }
    if (!fifo_.empty()) {
      Task t = std::move(fifo_.front());
      fifo_.pop_front();
      return t;
    }
    if (!asc_.empty()) {
      Task t = asc_.top();
      asc_.pop();
      return t;
    }
    if (!desc_.empty()) {
      Task t = desc_.top();
      desc_.pop();
      return t;
    }
    return std::nullopt;
  }

  std::size_t size() const { return fifo_.size() + asc_.size() + desc_.size() + random_.size(); }
  bool empty() const { return size() == 0; }

 private:
  // std::priority_queue pops the greatest element under the comparator.
  struct AscLater {
    bool operator()(const Task& a, const Task& b) const {
      if (a.priority != b.priority) return a.priority > b.priority;
      return a.seq > b.seq;
    }
  };
  struct DescLater {
    bool operator()(const Task& a, const Task& b) const {
      if (a.priority != b.priority) return a.priority < b.priority;
      return a.seq > b.seq;
    }
  };

  Schedule schedule_;
  std::mt19937_64 rng_;
  std::uint64_t next_seq_ = 0;
  std::deque<Task> fifo_;
  std::priority_queue<Task, std::vector<Task>, AscLater> asc_;
  std::priority_queue<Task, std::vector<Task>, DescLater> desc_;
  std::vector<Task> random_;
};

struct Env {
  std::vector<Value> vals;
  std::vector<char> bound;

  explicit Env(std::size_t n) : vals(n), bound(n, 0) {}
  void bind(int slot, Value v) {
    vals[slot] = std::move(v);
    bound[slot] = 1;
  }
};

/// Receives derived head facts.
class Emitter {
 public:
  virtual ~Emitter() = default;
  virtual void emit(int relation, Tuple key, Value value) = 0;
};

struct Counters {
  std::uint64_t popped = 0;
  std::uint64_t discarded = 0;
  std::uint64_t fired = 0;
  std::vector<std::uint64_t> firings;  // per rule
  std::vector<std::uint64_t> strict;   // per relation

  Counters(std::size_t rules, std::size_t relations) : firings(rules, 0), strict(relations, 0) {}
};

Value add_values(const Value& a, const Value& b) {
  if (a.kind() == ValueKind::Nat) return Value::nat(a.as_nat() + b.as_nat());
  std::int64_t out = 0;
  if (__builtin_add_overflow(a.as_int(), b.as_int(), &out)) {
    out = a.as_int() > 0 ? std::numeric_limits<std::int64_t>::max()
                         : std::numeric_limits<std::int64_t>::min();
  }
  return Value::integer(out);
}

bool compare(ast::CmpOp op, const Value& a, const Value& b) {
  switch (op) {
    case ast::CmpOp::Eq: return a == b;
    case ast::CmpOp::Le: return a <= b;
    case ast::CmpOp::Lt: return a < b;
    case ast::CmpOp::Ge: return a >= b;
    case ast::CmpOp::Gt: return a > b;
  }
  return false;
}

}  // namespace

class Solver::Impl {
 public:
  Impl(const Plan& plan, FactsDB& db, std::vector<Value> consts, SolverOptions opt)
      : plan_(plan), prog_(*plan.program), db_(db), consts_(std::move(consts)), opt_(opt),
        queue_(opt.schedule, opt.seed) {}

  Counters counters() const { return Counters(prog_.rules.size(), prog_.relations.size()); }

  SolverStats to_stats(const Counters& c) const {
    SolverStats s;
    s.popped = c.popped;
    s.discarded = c.discarded;
    s.fired = c.fired;
    for (std::size_t r = 0; r < prog_.rules.size(); ++r) {
      if (c.firings[r]) s.rule_firings[prog_.rules[r].name] += c.firings[r];
    }
    for (std::size_t r = 0; r < prog_.relations.size(); ++r) {
      if (c.strict[r]) s.strict_updates[prog_.relations[r].name] += c.strict[r];
    }
    return s;
  }

  // ---- evaluation -------------------------------------------------------

  Value eval(const TExpr& e, const Env& env) const {
    switch (e.kind) {
      case TExpr::Kind::Var: return env.vals[e.slot];
      case TExpr::Kind::Const: return e.value;
      case TExpr::Kind::ConstRef: return consts_[e.slot];
      case TExpr::Kind::Add: return add_values(eval(e.operands[0], env), eval(e.operands[1], env));
      case TExpr::Kind::SetOf: {
        std::vector<Value> elems;
        for (const auto& o : e.operands) elems.push_back(eval(o, env));
        return Value::set(std::move(elems));
      }
      case TExpr::Kind::Wildcard: break;
    }
    throw Error("wildcard cannot be evaluated");
  }

  /// Matches `a` against a stored fact, binding fresh variables. Bound
  /// lattice arguments hold when they are below the stored value.
  bool match(const TAtom& a, const Tuple& key, const Value& value, Env& env,
             std::vector<int>& fresh) const {
    const RelationInfo& rel = prog_.relations[a.relation];
    const std::size_t k = rel.key_arity();
    std::vector<Value> lat;
    if (!rel.key_only()) lat = rel.unpack_value(value);
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      const TExpr& e = a.args[i];
      const Value& stored = i < k ? key[i] : lat[i - k];
      if (e.kind == TExpr::Kind::Wildcard) continue;
      if (e.is_var() && !env.bound[e.slot]) {
        env.bind(e.slot, stored);
        fresh.push_back(e.slot);
        continue;
      }
      Value want = eval(e, env);
      bool ok = i < k ? want == stored : rel.lattices[i - k]->leq(want, stored);
      if (!ok) return false;
    }
    return true;
  }

  static void unbind(Env& env, std::vector<int>& fresh, std::size_t mark) {
    while (fresh.size() > mark) {
      env.bound[fresh.back()] = 0;
      fresh.pop_back();
    }
  }

  Tuple eval_key(const TAtom& a, const Env& env) const {
    const std::size_t k = prog_.relations[a.relation].key_arity();
    Tuple key;
    key.reserve(k);
    for (std::size_t i = 0; i < k; ++i) key.push_back(eval(a.args[i], env));
    return key;
  }

  bool forall_holds(const TForall& f, Env& env) const {
    Value coll = eval(f.collection, env);
    const RelationInfo& rel = prog_.relations[f.inner.relation];
    const std::size_t k = rel.key_arity();
    Value saved = env.vals[f.var_slot];
    char saved_bound = env.bound[f.var_slot];
    bool ok = true;
    for (const auto& elem : coll.elements()) {
      env.bind(f.var_slot, elem);
      auto stored = db_.get(f.inner.relation, eval_key(f.inner, env));
      if (!stored) {
        if (rel.key_only()) {
          ok = false;
          break;
        }
        stored = rel.value_lattice->bottom();
      }
      auto lat = rel.unpack_value(*stored);
      for (std::size_t i = k; i < f.inner.args.size() && ok; ++i) {
        const TExpr& e = f.inner.args[i];
        if (e.kind == TExpr::Kind::Wildcard) continue;
        ok = rel.lattices[i - k]->leq(eval(e, env), lat[i - k]);
      }
      if (!ok) break;
    }
    env.vals[f.var_slot] = std::move(saved);
    env.bound[f.var_slot] = saved_bound;
    return ok;
  }

  void emit_heads(const TRule& rule, const Env& env, Emitter& out) const {
    for (const auto& h : rule.heads) {
      const RelationInfo& rel = prog_.relations[h.relation];
      Tuple key = eval_key(h, env);
      std::vector<Value> lat;
      for (std::size_t i = rel.key_arity(); i < h.args.size(); ++i) lat.push_back(eval(h.args[i], env));
      Value v = rel.pack_value(lat);
      if (rel.value_lattice->is_bottom(v)) continue;
      out.emit(h.relation, std::move(key), std::move(v));
    }
  }

  void exec(const Variant& v, const TRule& rule, std::size_t i, Env& env, std::vector<int>& fresh,
            Emitter& out, Counters& c) const {
    if (i == v.steps.size()) {
      ++c.firings[v.rule];
      emit_heads(rule, env, out);
      return;
    }
    const PlanStep& s = v.steps[i];
    switch (s.kind) {
      case PlanStep::Kind::Join: {
        const auto& a = std::get<TAtom>(rule.body[s.premise]);
        const RelationInfo& rel = prog_.relations[a.relation];
        auto visit = [&](const Tuple& key, const Value& value) {
          std::size_t mark = fresh.size();
          if (match(a, key, value, env, fresh)) exec(v, rule, i + 1, env, fresh, out, c);
          unbind(env, fresh, mark);
        };
        if (s.bound_columns.size() == rel.key_arity()) {
          Tuple key = eval_key(a, env);
          if (auto val = db_.get(a.relation, key)) visit(key, *val);
        } else if (s.bound_columns.empty()) {
          for (const auto& [key, val] : db_.facts(a.relation)) visit(key, val);
        } else {
          const auto& cols = plan_.indexes.indexes[a.relation][s.index];
          Tuple prefix;
          for (std::size_t j = 0; j < s.bound_columns.size(); ++j) prefix.push_back(eval(a.args[cols[j]], env));
          for (const auto& key : db_.index_lookup(a.relation, s.index, prefix)) {
            if (auto val = db_.get(a.relation, key)) visit(key, *val);
          }
        }
        return;
      }
      case PlanStep::Kind::MemberLookup: {
        const auto& a = std::get<TAtom>(rule.body[s.premise]);
        const auto& f = std::get<TForall>(rule.body[v.pivot_premise]);
        for (const auto& key : db_.member_lookup(a.relation, s.member_column, env.vals[f.var_slot])) {
          auto val = db_.get(a.relation, key);
          if (!val) continue;
          std::size_t mark = fresh.size();
          if (match(a, key, *val, env, fresh)) exec(v, rule, i + 1, env, fresh, out, c);
          unbind(env, fresh, mark);
        }
        return;
      }
      case PlanStep::Kind::Check: {
        const TConstraint& k = s.check ? *s.check : std::get<TConstraint>(rule.body[s.premise]);
        if (compare(k.op, eval(k.lhs, env), eval(k.rhs, env))) exec(v, rule, i + 1, env, fresh, out, c);
        return;
      }
      case PlanStep::Kind::Assign: {
        const auto& k = std::get<TConstraint>(rule.body[s.premise]);
        std::size_t mark = fresh.size();
        env.bind(k.assign_slot, eval(k.lhs, env));
        fresh.push_back(k.assign_slot);
        exec(v, rule, i + 1, env, fresh, out, c);
        unbind(env, fresh, mark);
        return;
      }
      case PlanStep::Kind::Forall: {
        if (forall_holds(std::get<TForall>(rule.body[s.premise]), env)) {
          exec(v, rule, i + 1, env, fresh, out, c);
        }
        return;
      }
      case PlanStep::Kind::MemberFilter: {
        const auto& f = std::get<TForall>(rule.body[s.premise]);
        if (eval(f.collection, env).set_contains(env.vals[f.var_slot])) {
          exec(v, rule, i + 1, env, fresh, out, c);
        }
        return;
      }
    }
  }

  /// Runs `v` with the pivot bound from (key, value) when it has one.
  void run_variant(const Variant& v, const Tuple* key, const Value* value, Emitter& out,
                   Counters& c) const {
    const TRule& rule = prog_.rules[v.rule];
    Env env(rule.vars.size());
    std::vector<int> fresh;
    if (v.kind == Variant::Kind::Delta) {
      if (!match(std::get<TAtom>(rule.body[v.pivot_premise]), *key, *value, env, fresh)) return;
    } else if (v.kind == Variant::Kind::Member) {
      const auto& f = std::get<TForall>(rule.body[v.pivot_premise]);
      const std::size_t k = prog_.relations[f.inner.relation].key_arity();
      bool bound = false;
      for (std::size_t i = 0; i < k; ++i) {
        if (f.inner.args[i].is_var() && f.inner.args[i].slot == f.var_slot) {
          env.bind(f.var_slot, (*key)[i]);
          bound = true;
          break;
        }
      }
      if (!bound) return;
    }
    exec(v, rule, 0, env, fresh, out, c);
  }

  // ---- scheduling -------------------------------------------------------

  Task make_task(int rel, Tuple key, Value value) const {
    Task t;
    t.relation = rel;
    t.key = std::move(key);
    t.value = std::move(value);
    int pv = plan_.relation_priority[rel];
    if (opt_.schedule != Schedule::Priority || pv < 0) return t;
    const Variant& v = plan_.variants[pv];
    const TRule& rule = prog_.rules[v.rule];
    Env env(rule.vars.size());
    std::vector<int> fresh;
    if (!match(std::get<TAtom>(rule.body[v.pivot_premise]), t.key, t.value, env, fresh)) return t;
    t.priority = eval(v.priority->expr, env);
    t.cls = v.priority->direction == ast::Direction::Asc ? 1 : 2;
    return t;
  }

  /// Reserves derived facts in the database and buffers them as tasks.
  class TaskEmitter : public Emitter {
   public:
    TaskEmitter(const Impl& impl, std::vector<Task>& out) : impl_(impl), out_(out) {}
    void emit(int relation, Tuple key, Value value) override {
      if (!impl_.db_.reserve(relation, key, value)) return;
      out_.push_back(impl_.make_task(relation, std::move(key), std::move(value)));
    }

   private:
    const Impl& impl_;
    std::vector<Task>& out_;
  };

  class CollectEmitter : public Emitter {
   public:
    void emit(int relation, Tuple key, Value value) override {
      facts.push_back({relation, std::move(key), std::move(value)});
    }
    struct Derived {
      int relation;
      Tuple key;
      Value value;
    };
    std::vector<Derived> facts;
  };

  void process(Task& t, Counters& c, std::vector<Task>& out) const {
    ++c.popped;
    FactsDB::Applied a = db_.apply(t.relation, t.key, t.value, true);
    if (!a.changed) {
      ++c.discarded;
      return;
    }
    ++c.fired;
    ++c.strict[t.relation];
    TaskEmitter emitter(*this, out);
    for (int vid : plan_.triggered_by[t.relation]) {
      run_variant(plan_.variants[vid], &t.key, &a.value, emitter, c);
    }
  }

  void push_all(std::vector<Task>& tasks) {
    for (auto& t : tasks) queue_.push(std::move(t));
    tasks.clear();
  }

  void init(Counters& c) {
    std::vector<Task> out;
    TaskEmitter emitter(*this, out);
    for (int vid : plan_.init_variants) run_variant(plan_.variants[vid], nullptr, nullptr, emitter, c);
    std::lock_guard lock(mu_);
    push_all(out);
  }

  bool insert(int rel, Tuple key, Value value) {
    if (!db_.reserve(rel, key, value)) return false;
    Task t = make_task(rel, std::move(key), std::move(value));
    std::lock_guard lock(mu_);
    queue_.push(std::move(t));
    return true;
  }

  bool step(Counters& c) {
    std::optional<Task> t;
    {
      std::lock_guard lock(mu_);
      t = queue_.pop();
    }
    if (!t) return false;
    std::vector<Task> out;
    process(*t, c, out);
    std::lock_guard lock(mu_);
    push_all(out);
    return true;
  }

  void solve(std::size_t workers, Counters& total) {
    if (workers <= 1) {
      while (step(total)) {
      }
      return;
    }
    std::size_t in_flight = 0;
    std::exception_ptr failure;
    std::vector<Counters> local(workers, counters());
    auto worker = [&](std::size_t w) {
      std::vector<Task> out;
      std::unique_lock lock(mu_);
      while (true) {
        cv_.wait(lock, [&] { return !queue_.empty() || in_flight == 0 || failure; });
        if (failure || queue_.empty()) break;
        Task t = *queue_.pop();
        ++in_flight;
        lock.unlock();
        try {
          process(t, local[w], out);
        } catch (...) {
          lock.lock();
          failure = std::current_exception();
          --in_flight;
          cv_.notify_all();
          return;
        }
        lock.lock();
        bool pushed = !out.empty();
        push_all(out);
        --in_flight;
        if (pushed || (queue_.empty() && in_flight == 0)) cv_.notify_all();
      }
      cv_.notify_all();
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker, w);
    for (auto& th : threads) th.join();
    for (const auto& l : local) {
      total.popped += l.popped;
      total.discarded += l.discarded;
      total.fired += l.fired;
      for (std::size_t r = 0; r < l.firings.size(); ++r) total.firings[r] += l.firings[r];
      for (std::size_t r = 0; r < l.strict.size(); ++r) total.strict[r] += l.strict[r];
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::uint64_t naive_round(Counters& c, bool write) {
    CollectEmitter emitter;
    for (const auto& v : plan_.full) run_variant(v, nullptr, nullptr, emitter, c);
    std::uint64_t changed = 0;
    for (auto& d : emitter.facts) {
      if (write) {
        if (db_.apply(d.relation, d.key, d.value, false).changed) {
          ++changed;
          ++c.strict[d.relation];
        }
      } else {
        const Lattice& l = *prog_.relations[d.relation].value_lattice;
        auto cur = db_.get(d.relation, d.key);
        if (!l.leq(d.value, cur ? *cur : l.bottom())) ++changed;
      }
    }
    return changed;
  }

  std::uint64_t solve_naive(Counters& c) {
    {
      std::lock_guard lock(mu_);
      while (auto t = queue_.pop()) {
        ++c.popped;
        if (db_.apply(t->relation, t->key, t->value, true).changed) {
          ++c.fired;
          ++c.strict[t->relation];
        } else {
          ++c.discarded;
        }
      }
    }
    std::uint64_t rounds = 0;
    while (true) {
      ++rounds;
      if (naive_round(c, true) == 0) break;
    }
    return rounds;
  }

  std::size_t pending() const {
    std::lock_guard lock(mu_);
    return queue_.size();
  }

  const Plan& plan_;
  const TypedProgram& prog_;
  FactsDB& db_;
  std::vector<Value> consts_;
  SolverOptions opt_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  WorkQueue queue_;
};

// ---------------------------------------------------------------------------

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Solver::Solver(std::shared_ptr<const Plan> plan, const std::map<std::string, Value>& consts,
               SolverOptions options)
    : plan_(std::move(plan)) {
  if (!plan_->ok()) throw Error("plan has errors");
  const TypedProgram& p = *plan_->program;
  std::vector<Value> values;
  for (const auto& c : p.consts) {
    auto it = consts.find(c.name);
    if (it == consts.end()) throw Error("missing binding for const '" + c.name + "'");
    if (!conforms(it->second, c.type)) {
      throw Error("const '" + c.name + "' expects " + to_string(c.type) + ", got " +
                  to_display_string(it->second));
    }
    values.push_back(it->second);
  }
  for (const auto& [name, v] : consts) {
    if (!p.const_index(name)) throw Error("unknown const '" + name + "'");
  }
  db_ = std::make_unique<FactsDB>(plan_->program, plan_->indexes);
  impl_ = std::make_unique<Impl>(*plan_, *db_, std::move(values), options);
  Counters c = impl_->counters();
  impl_->init(c);
  totals_ += impl_->to_stats(c);
}

Solver::~Solver() = default;

bool Solver::insert_fact(std::string_view relation, std::span<const Value> args) {
  const TypedProgram& p = *plan_->program;
  auto idx = p.relation_index(relation);
  if (!idx) throw Error("unknown relation '" + std::string(relation) + "'");
  const RelationInfo& rel = p.relations[*idx];
  if (args.size() != rel.arity()) {
    throw Error("relation '" + rel.name + "' takes " + std::to_string(rel.arity()) +
                " arguments, got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!conforms(args[i], rel.arg_type(i))) {
      throw Error("argument " + std::to_string(i + 1) + " of '" + rel.name + "' expects " +
                  to_string(rel.arg_type(i)) + ", got " + to_display_string(args[i]));
    }
  }
  Tuple key(args.begin(), args.begin() + static_cast<long>(rel.key_arity()));
  Value v = rel.pack_value(args.subspan(rel.key_arity()));
  if (rel.value_lattice->is_bottom(v)) return false;
  return impl_->insert(*idx, std::move(key), std::move(v));
}

SolverStats Solver::solve(std::size_t workers) {
  auto t0 = std::chrono::steady_clock::now();
  Counters c = impl_->counters();
  impl_->solve(std::max<std::size_t>(workers, 1), c);
  SolverStats s = impl_->to_stats(c);
  s.wall_seconds = seconds_since(t0);
  totals_ += s;
  return s;
}

bool Solver::step() {
  Counters c = impl_->counters();
  bool any = impl_->step(c);
  totals_ += impl_->to_stats(c);
  return any;
}

SolverStats Solver::resolve_incremental(std::span<const FactInput> facts, std::size_t workers) {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& f : facts) insert_fact(f);
  SolverStats s = solve(workers);
  s.wall_seconds = seconds_since(t0);
  return s;
}

SolverStats Solver::solve_naive() {
  auto t0 = std::chrono::steady_clock::now();
  Counters c = impl_->counters();
  std::uint64_t rounds = impl_->solve_naive(c);
  SolverStats s = impl_->to_stats(c);
  s.naive_rounds = rounds;
  s.wall_seconds = seconds_since(t0);
  totals_ += s;
  return s;
}

std::uint64_t Solver::audit() const {
  Counters c = impl_->counters();
  return impl_->naive_round(c, false);
}

std::vector<Tuple> Solver::query(std::string_view relation,
                                 std::span<const std::optional<Value>> pattern) const {
  const TypedProgram& p = *plan_->program;
  auto idx = p.relation_index(relation);
  if (!idx) throw Error("unknown relation '" + std::string(relation) + "'");
  const RelationInfo& rel = p.relations[*idx];
  if (!pattern.empty() && pattern.size() != rel.key_arity() && pattern.size() != rel.arity()) {
    throw Error("pattern for '" + rel.name + "' must have " + std::to_string(rel.key_arity()) +
                " or " + std::to_string(rel.arity()) + " positions");
  }
  std::vector<Tuple> out;
  for (auto& [key, value] : db_->sorted_facts(*idx)) {
    Tuple args = key;
    for (auto& v : rel.unpack_value(value)) args.push_back(std::move(v));
    bool ok = true;
    for (std::size_t i = 0; i < pattern.size() && ok; ++i) {
      if (pattern[i] && !(*pattern[i] == args[i])) ok = false;
    }
    if (ok) out.push_back(std::move(args));
  }
  return out;
}

std::string Solver::canonical_dump() const {
  const TypedProgram& p = *plan_->program;
  std::string out;
  for (std::size_t r = 0; r < p.relations.size(); ++r) {
    const RelationInfo& rel = p.relations[r];
    auto facts = db_->sorted_facts(static_cast<int>(r));
    out += "# " + rel.name + " " + std::to_string(facts.size()) + "\n";
    for (auto& [key, value] : facts) {
      Tuple args = key;
      for (auto& v : rel.unpack_value(value)) args.push_back(std::move(v));
      out += fact_to_json(rel.name, args);
      out += '\n';
    }
  }
  return out;
}

std::size_t Solver::pending() const { return impl_->pending(); }

}  // namespace fpop
