#pragma once

#include "defsum/error.hpp"
#include "defsum/eval_term.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"

#include <map>
#include <optional>
#include <string>

namespace defsum {

/// Direct recursive satisfaction over every connective, including -> and <->,
/// with no compilation or desugaring. Slow; meant for cross-checks.
inline bool interpret(const Formula& f, std::map<std::string, Elem>& env, const Field& field) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return eval_term(f.lhs(), env, field) == eval_term(f.rhs(), env, field);
    case FormulaKind::Not:
      return !interpret(f.child(), env, field);
    case FormulaKind::And:
      for (const auto& c : f.children()) {
        if (!interpret(c, env, field)) return false;
      }
      return true;
    case FormulaKind::Or:
      for (const auto& c : f.children()) {
        if (interpret(c, env, field)) return true;
      }
      return false;
    case FormulaKind::Implies:
      return !interpret(f.children()[0], env, field) || interpret(f.children()[1], env, field);
    case FormulaKind::Iff:
      return interpret(f.children()[0], env, field) == interpret(f.children()[1], env, field);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const bool want = f.kind() == FormulaKind::Exists;
      std::optional<Elem> saved;
      if (auto it = env.find(f.var()); it != env.end()) saved = it->second;
      bool result = !want;
      for (std::uint64_t i = 0; i < field.q(); ++i) {
        env[f.var()] = field.element(i);
        if (interpret(f.child(), env, field) == want) {
          result = want;
          break;
        }
      }
      if (saved) {
        env[f.var()] = *saved;
      } else {
        env.erase(f.var());
      }
      return result;
    }
  }
  throw Error("unknown formula kind");
}

inline bool interpret(const Formula& f, const std::map<std::string, Elem>& env, const Field& field) {
  auto copy = env;
  return interpret(f, copy, field);
}

}  // namespace defsum
