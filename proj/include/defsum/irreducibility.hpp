#pragma once

#include "defsum/error.hpp"
#include "defsum/formula.hpp"
#include "defsum/term.hpp"

#include <string>
#include <vector>

namespace defsum {

/// Formula in a0..a_{n-1} (plus a_n when not monic) that holds exactly when
///   X^n + a_{n-1} X^{n-1} + ... + a0        (monic), or
///   a_n X^n + a_{n-1} X^{n-1} + ... + a0    (a_n != 0)
/// is irreducible over the field.
///
/// For each split n = j + k with 1 <= j <= k the formula forbids monic
/// factors X^j + b_{j-1} X^{j-1} + ... + b0 and X^k + c_{k-1} X^{k-1} + ... + c0
/// whose product matches the coefficients.
inline DefinableFormula build_irreducibility_formula(unsigned n, bool monic = true) {
  if (n < 2 || n > 6) throw DomainError("irreducibility formula needs degree 2..6, got " + std::to_string(n));
  auto name = [](char prefix, unsigned i) { return std::string(1, prefix) + std::to_string(i); };

  std::vector<std::string> vars;
  for (unsigned i = 0; i < n; ++i) vars.push_back(name('a', i));
  if (!monic) vars.push_back(name('a', n));
  const Term lead = monic ? Term::constant(1) : Term::variable(name('a', n));

  std::vector<Formula> clauses;
  if (!monic) clauses.push_back(Formula::negation(Formula::atom(lead, Term{})));

  for (unsigned j = 1; j <= n / 2; ++j) {
    const unsigned k = n - j;
    auto factor_coeff = [&](char prefix, unsigned degree, unsigned i) {
      return i == degree ? Term::constant(1) : Term::variable(name(prefix, i));
    };
    std::vector<Formula> equations;
    for (unsigned m = 0; m < n; ++m) {
      Term product;
      for (unsigned i = 0; i <= j && i <= m; ++i) {
        const unsigned l = m - i;
        if (l > k) continue;
        product += factor_coeff('b', j, i) * factor_coeff('c', k, l);
      }
      equations.push_back(Formula::atom(Term::variable(name('a', m)), lead * product));
    }
    Formula body = Formula::conjunction(std::move(equations));
    for (unsigned i = k; i-- > 0;) body = Formula::exists(name('c', i), body);
    for (unsigned i = j; i-- > 0;) body = Formula::exists(name('b', i), body);
    clauses.push_back(Formula::negation(body));
  }
  return DefinableFormula{Formula::conjunction(std::move(clauses)), vars, {}};
}

}  // namespace defsum
