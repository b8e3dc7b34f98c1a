#pragma once

#include "defsum/error.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/term.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace defsum {

/// A term specialised to one field: coefficients reduced mod p, variables
/// replaced by slots of an environment array.
class CompiledTerm {
 public:
  CompiledTerm() = default;

  /// `slot_of` maps each variable name to its slot, or returns -1 when the name is unknown.
  CompiledTerm(const Term& t, const Field& field, const std::function<int(const std::string&)>& slot_of) {
    std::vector<int> slot_for_var;
    for (const auto& name : t.variables()) {
      const int s = slot_of(name);
      if (s < 0) throw DomainError("no value assigned to variable '" + name + "'");
      slot_for_var.push_back(s);
    }
    for (const auto& [e, c] : t.monomials()) {
      const Elem coeff = field.from_int(c);
      if (coeff.v == 0) continue;
      Mono m{coeff, static_cast<std::uint32_t>(factors_.size()), 0};
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) factors_.push_back(Factor{static_cast<std::uint32_t>(slot_for_var[i]), e[i]});
      }
      m.end = static_cast<std::uint32_t>(factors_.size());
      std::uint64_t weight = 1;
      for (std::size_t i = 0; i < e.size(); ++i) weight += e[i];
      m.heavy = weight > 16;
      monos_.push_back(m);
    }
  }

  Elem eval(const Field& field, const Elem* env) const noexcept {
    if (field.has_log_tables()) return eval_logs(field, env);
    Elem acc = field.zero();
    for (const auto& m : monos_) acc = field.add(acc, eval_mono(field, env, m));
    return acc;
  }

  Elem eval_logs(const Field& field, const Elem* env) const noexcept {
    const std::uint64_t order = field.group_order();
    Elem acc = field.zero();
    for (const auto& m : monos_) {
      if (m.heavy) {
        acc = field.add(acc, eval_mono(field, env, m));
        continue;
      }
      std::uint64_t e = field.log_unchecked(m.coeff);
      bool zero = false;
      for (std::uint32_t i = m.begin; i < m.end; ++i) {
        const auto& f = factors_[i];
        const Elem x = env[f.slot];
        if (x.v == 0) {
          zero = true;
          break;
        }
        e += std::uint64_t{field.log_unchecked(x)} * f.exp;
      }
      if (zero) continue;
      while (e >= order) e -= order;
      acc = field.add(acc, field.exp_unchecked(e));
    }
    return acc;
  }

  /// Number of monomials that survive reduction mod p.
  std::size_t size() const noexcept { return monos_.size(); }

  std::vector<std::uint32_t> slots() const {
    std::vector<std::uint32_t> out;
    for (const auto& f : factors_) out.push_back(f.slot);
    return out;
  }

 private:
  struct Mono;

  Elem eval_mono(const Field& field, const Elem* env, const Mono& m) const noexcept {
    Elem v = m.coeff;
    for (std::uint32_t i = m.begin; i < m.end; ++i) {
      const auto& f = factors_[i];
      const Elem x = env[f.slot];
      v = field.mul(v, f.exp == 1 ? x : field.pow(x, f.exp));
    }
    return v;
  }

  struct Factor {
    std::uint32_t slot;
    std::uint32_t exp;
  };
  struct Mono {
    Elem coeff;
    std::uint32_t begin;
    std::uint32_t end;
    bool heavy = false;
  };
  std::vector<Mono> monos_;
  std::vector<Factor> factors_;
};

/// Value of t in the field with integer coefficients mapped through Z -> F_q.
inline Elem eval_term(const Term& t, const std::map<std::string, Elem>& assignment, const Field& field) {
  std::vector<Elem> env;
  std::map<std::string, int> slot;
  for (const auto& [name, value] : assignment) {
    slot[name] = static_cast<int>(env.size());
    env.push_back(value);
  }
  const CompiledTerm compiled(t, field, [&](const std::string& n) {
    auto it = slot.find(n);
    return it == slot.end() ? -1 : it->second;
  });
  return compiled.eval(field, env.data());
}

}  // namespace defsum
