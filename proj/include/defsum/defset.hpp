#pragma once

#include "defsum/desugar.hpp"
#include "defsum/error.hpp"
#include "defsum/eval_term.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace defsum {

/// How quantifiers are decided.
///
/// Brute scans every witness in enumeration order. Pruned groups consecutive
/// existential quantifiers into a block, checks each conjunct of the block
/// body as soon as its variables are assigned, and assigns a variable
/// directly when some equation is linear in it with a unit coefficient.
/// Universal blocks run as negated existential blocks. Both give identical
/// answers.
enum class Strategy { Brute, Pruned };

struct EvalOptions {
  double budget = 1e8;
  unsigned workers = 1;
  Strategy strategy = Strategy::Brute;
};

struct DefinableSetResult {
  std::vector<std::vector<Elem>> points;
  std::uint64_t count = 0;
  double cost = 0;
};

/// A definable formula specialised to one field. Environment slots hold the
/// point variables, then the parameters, then one slot per quantifier.
class CompiledFormula {
 public:
  CompiledFormula(const DefinableFormula& df, const Field& field, Strategy strategy = Strategy::Brute)
      : field_(field), strategy_(strategy), vars_(df.vars.size()), params_(df.params.size()) {
    std::vector<std::pair<std::string, std::uint32_t>> scope;
    for (const auto& v : df.vars) scope.emplace_back(v, next_slot_++);
    for (const auto& v : df.params) scope.emplace_back(v, next_slot_++);
    root_ = compile(desugar(df.formula), scope);
  }

  const Field& field() const noexcept { return field_; }
  std::size_t var_count() const noexcept { return vars_; }
  std::size_t param_count() const noexcept { return params_; }
  std::size_t slot_count() const noexcept { return next_slot_; }

  /// Estimated field operations to decide one point.
  double cost_per_point() const noexcept { return nodes_[static_cast<std::size_t>(root_)].cost; }

  /// Estimated field operations to scan all q^n points.
  double cost() const noexcept {
    return std::pow(static_cast<double>(field_.q()), static_cast<double>(vars_)) * cost_per_point();
  }

  /// Truth at the point and parameters stored in env[0 .. vars+params).
  /// The remaining slots are scratch space.
  bool holds(Elem* env) const { return eval(root_, env); }

 private:
  enum class Op { Atom, Not, And, Or, Exists, Forall, Block };

  struct Node {
    Op op = Op::Atom;
    CompiledTerm term;
    std::vector<int> kids;
    std::uint32_t slot = 0;
    int plan = -1;
    double cost = 1;
  };

  struct Step {
    bool solve = false;
    std::uint32_t slot = 0;
    CompiledTerm rest;
    Elem scale{};
    std::vector<int> checks;
  };

  struct Plan {
    std::vector<int> pre_checks;
    std::vector<Step> steps;
  };

  using Scope = std::vector<std::pair<std::string, std::uint32_t>>;

  static int lookup(const Scope& scope, const std::string& name) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == name) return static_cast<int>(it->second);
    }
    return -1;
  }

  CompiledTerm compile_term(const Term& t, const Scope& scope) const {
    return CompiledTerm(t, field_, [&](const std::string& n) { return lookup(scope, n); });
  }

  int add_node(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  double q() const noexcept { return static_cast<double>(field_.q()); }

  int compile(const Formula& f, Scope& scope) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        Node n;
        n.op = Op::Atom;
        n.term = compile_term(f.lhs() - f.rhs(), scope);
        n.cost = static_cast<double>(std::max<std::size_t>(1, n.term.size()));
        return add_node(std::move(n));
      }
      case FormulaKind::Not: {
        Node n;
        n.op = Op::Not;
        n.kids.push_back(compile(f.child(), scope));
        n.cost = nodes_[static_cast<std::size_t>(n.kids[0])].cost;
        return add_node(std::move(n));
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        Node n;
        n.op = f.kind() == FormulaKind::And ? Op::And : Op::Or;
        n.cost = 0;
        for (const auto& c : f.children()) {
          n.kids.push_back(compile(c, scope));
          n.cost += nodes_[static_cast<std::size_t>(n.kids.back())].cost;
        }
        return add_node(std::move(n));
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        if (strategy_ == Strategy::Pruned) return compile_block(f, scope);
        {
          Node n;
          n.op = f.kind() == FormulaKind::Exists ? Op::Exists : Op::Forall;
          n.slot = next_slot_++;
          scope.emplace_back(f.var(), n.slot);
          n.kids.push_back(compile(f.child(), scope));
          scope.pop_back();
          n.cost = q() * nodes_[static_cast<std::size_t>(n.kids[0])].cost;
          return add_node(std::move(n));
        }
      case FormulaKind::Implies:
      case FormulaKind::Iff:
        break;
    }
    throw DomainError("formula must be desugared before compilation");
  }

  static Formula negate(const Formula& f) {
    return f.kind() == FormulaKind::Not ? f.child() : Formula::negation(f);
  }

  void collect_slots(int idx, std::vector<std::uint32_t>& out) const {
    const auto& n = nodes_[static_cast<std::size_t>(idx)];
    if (n.op == Op::Atom) {
      const auto s = n.term.slots();
      out.insert(out.end(), s.begin(), s.end());
    }
    if (n.op == Op::Block) {
      const auto& plan = plans_[static_cast<std::size_t>(n.plan)];
      for (int c : plan.pre_checks) collect_slots(c, out);
      for (const auto& st : plan.steps) {
        const auto s = st.rest.slots();
        out.insert(out.end(), s.begin(), s.end());
        for (int c : st.checks) collect_slots(c, out);
      }
    }
    for (int k : n.kids) collect_slots(k, out);
  }

  int compile_block(const Formula& f, Scope& scope) {
    const bool universal = f.kind() == FormulaKind::Forall;
    std::vector<std::string> names;
    Formula body = f;
    while (body.kind() == f.kind()) {
      names.push_back(body.var());
      body = body.child();
    }
    if (universal) {
      if (body.kind() == FormulaKind::Or) {
        std::vector<Formula> parts;
        for (const auto& c : body.children()) parts.push_back(negate(c));
        body = Formula::conjunction(std::move(parts));
      } else {
        body = negate(body);
      }
    }

    const std::size_t scope_mark = scope.size();
    std::vector<std::uint32_t> block_slots;
    for (const auto& name : names) {
      block_slots.push_back(next_slot_++);
      scope.emplace_back(name, block_slots.back());
    }

    const std::vector<Formula> conjuncts =
        body.kind() == FormulaKind::And ? body.children() : std::vector<Formula>{body};
    struct Conjunct {
      Formula formula;
      int node;
      std::vector<std::uint32_t> block_vars;
      bool scheduled = false;
    };
    std::vector<Conjunct> items;
    for (const auto& c : conjuncts) {
      Conjunct item{c, compile(c, scope), {}};
      std::vector<std::uint32_t> used;
      collect_slots(item.node, used);
      for (auto s : block_slots) {
        if (std::find(used.begin(), used.end(), s) != used.end()) item.block_vars.push_back(s);
      }
      items.push_back(std::move(item));
    }

    std::vector<bool> assigned_flag(next_slot_, false);
    auto unassigned = [&](const Conjunct& c) {
      std::vector<std::uint32_t> out;
      for (auto s : c.block_vars) {
        if (!assigned_flag[s]) out.push_back(s);
      }
      return out;
    };
    auto name_of = [&](std::uint32_t slot) {
      for (std::size_t i = 0; i < block_slots.size(); ++i) {
        if (block_slots[i] == slot) return names[i];
      }
      return std::string{};
    };
    // A conjunct that is an equation linear in `slot` with a coefficient that is a unit mod p.
    auto solvable = [&](const Conjunct& c, std::uint32_t slot) -> bool {
      if (c.formula.kind() != FormulaKind::Atom) return false;
      const Term t = c.formula.lhs() - c.formula.rhs();
      const std::string name = name_of(slot);
      if (t.degree_in(name) != 1) return false;
      const Term coeff = t.coefficient_of(name, 1);
      return coeff.is_constant() && field_.from_int(coeff.constant_term()).v != 0;
    };

    Plan plan;
    double plan_cost = 0;
    for (auto& c : items) {
      if (c.block_vars.empty()) {
        c.scheduled = true;
        plan.pre_checks.push_back(c.node);
        plan_cost += nodes_[static_cast<std::size_t>(c.node)].cost;
      }
    }

    std::vector<std::uint32_t> remaining = block_slots;
    double multiplicity = 1;
    while (!remaining.empty()) {
      Step step;
      bool found = false;
      for (auto& c : items) {
        if (c.scheduled) continue;
        const auto open = unassigned(c);
        if (open.size() == 1 && solvable(c, open[0])) {
          const std::string name = name_of(open[0]);
          const Term t = c.formula.lhs() - c.formula.rhs();
          step.solve = true;
          step.slot = open[0];
          step.rest = compile_term(t.coefficient_of(name, 0), scope);
          step.scale = field_.neg(field_.inv(field_.from_int(t.coefficient_of(name, 1).constant_term())));
          c.scheduled = true;
          found = true;
          break;
        }
      }
      if (!found) {
        std::size_t best = 0;
        int best_score = -1;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
          assigned_flag[remaining[i]] = true;
          int score = 0;
          for (const auto& c : items) {
            if (c.scheduled) continue;
            const auto open = unassigned(c);
            if (open.empty() || (open.size() == 1 && solvable(c, open[0]))) ++score;
          }
          assigned_flag[remaining[i]] = false;
          if (score > best_score) {
            best_score = score;
            best = i;
          }
        }
        step.slot = remaining[best];
        multiplicity *= q();
      }
      assigned_flag[step.slot] = true;
      remaining.erase(std::find(remaining.begin(), remaining.end(), step.slot));
      if (step.solve) plan_cost += multiplicity * (1 + static_cast<double>(step.rest.size()));
      for (auto& c : items) {
        if (!c.scheduled && unassigned(c).empty()) {
          c.scheduled = true;
          step.checks.push_back(c.node);
          plan_cost += multiplicity * nodes_[static_cast<std::size_t>(c.node)].cost;
        }
      }
      plan.steps.push_back(std::move(step));
    }
    scope.resize(scope_mark);

    plans_.push_back(std::move(plan));
    Node n;
    n.op = Op::Block;
    n.plan = static_cast<int>(plans_.size()) - 1;
    n.cost = plan_cost;
    const int block = add_node(std::move(n));
    if (!universal) return block;
    Node neg;
    neg.op = Op::Not;
    neg.kids.push_back(block);
    neg.cost = plan_cost;
    return add_node(std::move(neg));
  }

  bool checks_pass(const std::vector<int>& checks, Elem* env) const {
    for (int c : checks) {
      if (!eval(c, env)) return false;
    }
    return true;
  }

  bool run_plan(const Plan& plan, std::size_t i, Elem* env) const {
    if (i == plan.steps.size()) return true;
    const Step& st = plan.steps[i];
    if (st.solve) {
      env[st.slot] = field_.mul(st.scale, st.rest.eval(field_, env));
      return checks_pass(st.checks, env) && run_plan(plan, i + 1, env);
    }
    const auto q = static_cast<std::uint32_t>(field_.q());
    for (std::uint32_t x = 0; x < q; ++x) {
      env[st.slot] = Elem{x};
      if (checks_pass(st.checks, env) && run_plan(plan, i + 1, env)) return true;
    }
    return false;
  }

  bool eval(int idx, Elem* env) const {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    switch (n.op) {
      case Op::Atom:
        return n.term.eval(field_, env).v == 0;
      case Op::Not:
        return !eval(n.kids[0], env);
      case Op::And:
        for (int k : n.kids) {
          if (!eval(k, env)) return false;
        }
        return true;
      case Op::Or:
        for (int k : n.kids) {
          if (eval(k, env)) return true;
        }
        return false;
      case Op::Exists:
      case Op::Forall: {
        const bool want = n.op == Op::Exists;
        const auto q = static_cast<std::uint32_t>(field_.q());
        for (std::uint32_t x = 0; x < q; ++x) {
          env[n.slot] = Elem{x};
          if (eval(n.kids[0], env) == want) return want;
        }
        return !want;
      }
      case Op::Block: {
        const Plan& plan = plans_[static_cast<std::size_t>(n.plan)];
        return checks_pass(plan.pre_checks, env) && run_plan(plan, 0, env);
      }
    }
    return false;
  }

  Field field_;
  Strategy strategy_;
  std::size_t vars_;
  std::size_t params_;
  std::uint32_t next_slot_ = 0;
  std::vector<Node> nodes_;
  std::vector<Plan> plans_;
  int root_ = 0;
};

inline void check_budget(double estimate, double budget) {
  if (!(estimate <= budget)) throw BudgetError(estimate, budget);
}

/// Scans the definable set in lexicographic point order, split into blocks by
/// the value of the first variable. visit(env, acc) is called for each point
/// of a block with env[0..n) holding the point; one accumulator per block is
/// returned, in block order, independent of the worker count.
template <class Acc, class Visit>
std::vector<Acc> scan_blocks(const CompiledFormula& cf, const std::vector<Elem>& params, unsigned workers,
                             Visit&& visit) {
  if (params.size() != cf.param_count()) {
    throw DomainError("expected " + std::to_string(cf.param_count()) + " parameter values, got " +
                      std::to_string(params.size()));
  }
  const std::size_t n = cf.var_count();
  const auto q = static_cast<std::uint32_t>(cf.field().q());
  const std::size_t blocks = n == 0 ? 1 : q;
  std::vector<Acc> out(blocks);
  for_each_block(blocks, workers, [&](std::size_t b) {
    std::vector<Elem> env(cf.slot_count());
    std::copy(params.begin(), params.end(), env.begin() + static_cast<std::ptrdiff_t>(n));
    if (n > 0) env[0] = Elem{static_cast<std::uint32_t>(b)};
    Acc& acc = out[b];
    for (;;) {
      if (cf.holds(env.data())) visit(static_cast<const Elem*>(env.data()), acc);
      bool done = true;
      for (std::size_t i = n; i > 1;) {
        --i;
        if (++env[i].v < q) {
          done = false;
          break;
        }
        env[i].v = 0;
      }
      if (done) break;
    }
  });
  return out;
}

inline bool satisfies(const DefinableFormula& df, const Field& field, const std::vector<Elem>& point,
                      const std::vector<Elem>& params, const EvalOptions& opts = {}) {
  const CompiledFormula cf(df, field, opts.strategy);
  check_budget(cf.cost_per_point(), opts.budget);
  if (point.size() != cf.var_count() || params.size() != cf.param_count()) {
    throw DomainError("assignment does not cover the declared variables and parameters");
  }
  std::vector<Elem> env(cf.slot_count());
  std::copy(point.begin(), point.end(), env.begin());
  std::copy(params.begin(), params.end(), env.begin() + static_cast<std::ptrdiff_t>(point.size()));
  return cf.holds(env.data());
}

/// Satisfaction under a name -> value assignment covering every variable and parameter.
inline bool satisfies(const DefinableFormula& df, const Field& field, const std::map<std::string, Elem>& assignment,
                      const EvalOptions& opts = {}) {
  auto pick = [&](const std::vector<std::string>& names) {
    std::vector<Elem> out;
    for (const auto& name : names) {
      auto it = assignment.find(name);
      if (it == assignment.end()) throw DomainError("no value assigned to '" + name + "'");
      out.push_back(it->second);
    }
    return out;
  };
  return satisfies(df, field, pick(df.vars), pick(df.params), opts);
}

inline DefinableSetResult enumerate_set(const DefinableFormula& df, const Field& field,
                                        const std::vector<Elem>& params = {}, const EvalOptions& opts = {}) {
  const CompiledFormula cf(df, field, opts.strategy);
  check_budget(cf.cost(), opts.budget);
  const std::size_t n = cf.var_count();
  struct Points {
    std::vector<Elem> flat;
    std::uint64_t count = 0;
  };
  auto blocks = scan_blocks<Points>(cf, params, opts.workers, [n](const Elem* env, Points& acc) {
    acc.flat.insert(acc.flat.end(), env, env + n);
    ++acc.count;
  });
  DefinableSetResult r;
  r.cost = cf.cost();
  for (const auto& b : blocks) {
    for (std::uint64_t i = 0; i < b.count; ++i) {
      const auto first = b.flat.begin() + static_cast<std::ptrdiff_t>(i * n);
      r.points.emplace_back(first, first + static_cast<std::ptrdiff_t>(n));
    }
  }
  r.count = r.points.size();
  return r;
}

inline std::uint64_t count(const DefinableFormula& df, const Field& field, const std::vector<Elem>& params = {},
                           const EvalOptions& opts = {}) {
  const CompiledFormula cf(df, field, opts.strategy);
  check_budget(cf.cost(), opts.budget);
  auto blocks = scan_blocks<std::uint64_t>(cf, params, opts.workers, [](const Elem*, std::uint64_t& acc) { ++acc; });
  std::uint64_t total = 0;
  for (auto b : blocks) total += b;
  return total;
}

}  // namespace defsum
