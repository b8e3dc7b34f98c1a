#pragma once

#include "defsum/error.hpp"
#include "defsum/formula.hpp"
#include "defsum/term.hpp"

#include <string>
#include <vector>

namespace defsum {

/// t with every occurrence of `name` replaced by `value`.
inline Term substitute(const Term& t, const std::string& name, const Term& value) {
  if (!t.mentions(name)) return t;
  const auto& vars = t.variables();
  Term out;
  for (const auto& [exps, coef] : t.monomials()) {
    Term mono = Term::constant(coef);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (exps[i] == 0) continue;
      const Term base = vars[i] == name ? value : Term::variable(vars[i]);
      mono *= base.pow(exps[i]);
    }
    out += mono;
  }
  return out;
}

/// Replaces the free occurrences of `name`. Throws DomainError when a
/// quantifier would capture a variable of `value`.
inline Formula substitute(const Formula& f, const std::string& name, const Term& value) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return Formula::atom(substitute(f.lhs(), name, value), substitute(f.rhs(), name, value));
    case FormulaKind::Not:
      return Formula::negation(substitute(f.child(), name, value));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(substitute(c, name, value));
      return f.kind() == FormulaKind::And ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    case FormulaKind::Implies:
      return Formula::implies(substitute(f.children()[0], name, value), substitute(f.children()[1], name, value));
    case FormulaKind::Iff:
      return Formula::iff(substitute(f.children()[0], name, value), substitute(f.children()[1], name, value));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      if (f.var() == name) return f;
      if (value.mentions(f.var())) {
        throw DomainError("substitution for '" + name + "' would be captured by the quantifier on '" + f.var() + "'");
      }
      Formula body = substitute(f.child(), name, value);
      return f.kind() == FormulaKind::Exists ? Formula::exists(f.var(), std::move(body))
                                             : Formula::forall(f.var(), std::move(body));
    }
  }
  return f;
}

}  // namespace defsum
