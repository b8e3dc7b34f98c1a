#pragma once

#include "defsum/defset.hpp"
#include "defsum/error.hpp"
#include "defsum/expsum.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/irreducibility.hpp"
#include "defsum/lab/report.hpp"
#include "defsum/substitute.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace defsum::lab {

/// Which polynomial the restricted sum K* asks to be irreducible:
/// X^n + a_{n-1} X^{n-1} + ... + a_1 X + c with c = a_0 (ConstantA0) or c = 1 (ConstantOne).
enum class KloostermanReading { ConstantA0, ConstantOne };

inline std::string to_string(KloostermanReading r) { return r == KloostermanReading::ConstantA0 ? "a0" : "one"; }

inline std::vector<std::string> kloosterman_vars(unsigned n) {
  std::vector<std::string> v;
  for (unsigned i = 0; i < n; ++i) v.push_back("a" + std::to_string(i));
  return v;
}

/// a_0 a_1 ... a_{n-1} = 1.
inline DefinableFormula product_one_formula(unsigned n) {
  Term prod = Term::constant(1);
  for (const auto& v : kloosterman_vars(n)) prod *= Term::variable(v);
  return DefinableFormula{Formula::atom(prod, Term::constant(1)), kloosterman_vars(n), {}};
}

inline DefinableFormula restricted_kloosterman_formula(unsigned n, KloostermanReading reading) {
  Formula irr = build_irreducibility_formula(n).formula;
  if (reading == KloostermanReading::ConstantOne) irr = substitute(irr, "a0", Term::constant(1));
  return DefinableFormula{Formula::conjunction({product_one_formula(n).formula, irr}), kloosterman_vars(n), {}};
}

inline RationalMap coefficient_sum(unsigned n) {
  Term s;
  for (const auto& v : kloosterman_vars(n)) s += Term::variable(v);
  return RationalMap(s);
}

/// Monic irreducible polynomials of degree n over F_p with constant term c.
inline std::uint64_t count_irreducible_with_constant(unsigned n, const Field& field, Elem c,
                                                     const EvalOptions& opts = {}) {
  const auto irr = build_irreducibility_formula(n);
  std::vector<std::string> vars(irr.vars.begin() + 1, irr.vars.end());
  const DefinableFormula df{irr.formula, vars, {"a0"}};
  return count(df, field, {c}, opts);
}

/// Elements of F_{p^n} of norm 1 to F_p that generate F_{p^n}.
inline std::uint64_t count_norm_one_of_degree(std::uint64_t p, unsigned n, std::uint64_t table_budget = kDefaultTableBudget) {
  const Field ext = Field::make(p, n, table_budget);
  std::vector<unsigned> proper;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) proper.push_back(d);
  }
  std::uint64_t total = 0;
  for (std::uint64_t i = 1; i < ext.q(); ++i) {
    const Elem x = ext.element(i);
    if (ext.norm_to_prime(x) != 1) continue;
    bool generates = true;
    for (unsigned d : proper) {
      Elem y = x;
      for (unsigned k = 0; k < d; ++k) y = ext.frobenius(y);
      if (y == x) {
        generates = false;
        break;
      }
    }
    if (generates) ++total;
  }
  return total;
}

struct KloostermanRecord {
  std::uint64_t p = 0;
  unsigned n = 0;
  KloostermanReading reading = KloostermanReading::ConstantA0;
  Complex k{};
  Complex k_star{};
  std::uint64_t k_count = 0;
  std::uint64_t k_star_count = 0;
  /// Monic irreducibles of degree n with constant term (-1)^n.
  std::uint64_t irreducible_count = 0;
  std::uint64_t norm_one_degree_n = 0;
  double deligne_bound = 0;
  double k_ratio = 0;
  double k_star_ratio = 0;
  bool identity = false;
};

inline KloostermanRecord kloosterman_record(unsigned n, std::uint64_t p, KloostermanReading reading,
                                            const EvalOptions& opts) {
  if (n < 2 || n > 6) throw DomainError("Kloosterman experiment needs 2 <= n <= 6");
  const Field field = Field::prime(p);
  KloostermanRecord r;
  r.p = p;
  r.n = n;
  r.reading = reading;
  const double pd = static_cast<double>(p);

  const SumSpec full{product_one_formula(n), coefficient_sum(n), RationalMap(Term::constant(1)), 1, 0};
  const auto k = sum(full, field, {}, opts);
  r.k = k.value;
  r.k_count = k.count;
  r.deligne_bound = (n + 1) * std::pow(pd, n / 2.0);
  r.k_ratio = std::abs(r.k) / std::pow(pd, n / 2.0);

  const SumSpec restricted{restricted_kloosterman_formula(n, reading), coefficient_sum(n), RationalMap(Term::constant(1)),
                           1, 0};
  const auto ks = sum(restricted, field, {}, opts);
  r.k_star = ks.value;
  r.k_star_count = ks.count;
  r.k_star_ratio = std::abs(r.k_star) / std::pow(pd, n - 0.5);

  const Elem c = field.from_int(static_cast<std::int64_t>(n % 2 == 0 ? 1 : -1));
  r.irreducible_count = count_irreducible_with_constant(n, field, c, opts);
  r.norm_one_degree_n = count_norm_one_of_degree(p, n);
  r.identity = r.norm_one_degree_n == n * r.irreducible_count;
  return r;
}

struct KloostermanConfig {
  EvalOptions eval{1e8, 1, Strategy::Pruned};
  KloostermanReading reading = KloostermanReading::ConstantA0;
  double k_star_bound = 3.0;
};

inline ExperimentReport kloosterman_experiment(unsigned n, const std::vector<std::uint64_t>& primes,
                                               const KloostermanConfig& cfg = {}) {
  ExperimentReport r;
  r.name = "kloosterman n=" + std::to_string(n) + " reading=" + to_string(cfg.reading);
  r.columns = {"p",           "n",           "reading",      "k_re",         "k_im",         "k_abs",
               "k_count",     "deligne",     "k_ratio",      "kstar_re",     "kstar_im",     "kstar_abs",
               "kstar_count", "kstar_ratio", "irreducible", "norm_one_deg", "identity"};
  bool deligne = true;
  bool ratio = true;
  bool identity = true;
  double worst_k_star = 0;
  for (auto p : primes) {
    const auto k = kloosterman_record(n, p, cfg.reading, cfg.eval);
    deligne = deligne && std::abs(k.k) <= k.deligne_bound;
    ratio = ratio && k.k_star_ratio <= cfg.k_star_bound;
    identity = identity && k.identity;
    worst_k_star = std::max(worst_k_star, k.k_star_ratio);
    r.rows.push_back({std::to_string(p), std::to_string(n), to_string(k.reading), format_double(k.k.real()),
                      format_double(k.k.imag()), format_double(std::abs(k.k)), std::to_string(k.k_count),
                      format_double(k.deligne_bound), format_double(k.k_ratio), format_double(k.k_star.real()),
                      format_double(k.k_star.imag()), format_double(std::abs(k.k_star)), std::to_string(k.k_star_count),
                      format_double(k.k_star_ratio), std::to_string(k.irreducible_count),
                      std::to_string(k.norm_one_degree_n), k.identity ? "1" : "0"});
  }
  r.summary.emplace_back("max |K*|/p^(n-1/2) reading " + to_string(cfg.reading), format_double(worst_k_star));
  r.add_check("|K| <= (n+1) p^(n/2)", deligne);
  r.add_check("|K*| / p^(n-1/2) <= " + format_double(cfg.k_star_bound), ratio);
  r.add_check("n * irreducible count = norm-one degree-n count", identity);
  return r;
}

}  // namespace defsum::lab
