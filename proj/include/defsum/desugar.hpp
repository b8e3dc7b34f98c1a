#pragma once

#include "defsum/formula.hpp"

#include <vector>

namespace defsum {

/// Rewrites -> and <-> into negation, conjunction and disjunction:
/// a -> b becomes !a | b, and a <-> b becomes (!a | b) & (!b | a).
inline Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Not:
      return Formula::negation(desugar(f.child()));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(desugar(c));
      return f.kind() == FormulaKind::And ? Formula::conjunction(std::move(parts))
                                          : Formula::disjunction(std::move(parts));
    }
    case FormulaKind::Implies:
      return Formula::disjunction({Formula::negation(desugar(f.children()[0])), desugar(f.children()[1])});
    case FormulaKind::Iff: {
      const Formula a = desugar(f.children()[0]);
      const Formula b = desugar(f.children()[1]);
      return Formula::conjunction(
          {Formula::disjunction({Formula::negation(a), b}), Formula::disjunction({Formula::negation(b), a})});
    }
    case FormulaKind::Exists:
      return Formula::exists(f.var(), desugar(f.child()));
    case FormulaKind::Forall:
      return Formula::forall(f.var(), desugar(f.child()));
  }
  return f;
}

}  // namespace defsum
