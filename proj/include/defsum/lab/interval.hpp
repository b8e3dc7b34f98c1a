#pragma once

#include "defsum/characters.hpp"
#include "defsum/defset.hpp"
#include "defsum/error.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/lab/report.hpp"
#include "defsum/numeric.hpp"
#include "defsum/pairwise_sum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace defsum::lab {

struct Progression {
  std::uint64_t start = 0;
  std::uint64_t step = 1;
  std::uint64_t length = 0;
};

struct IntervalVerdict {
  bool is_interval = false;
  /// The set is {i mod p : a <= i <= b}; a is negative for wrapping intervals.
  std::int64_t a = 0;
  std::int64_t b = -1;
  /// Interval that does not wrap around 0.
  bool plain = false;
  /// {start + i*step mod p : 0 <= i < length} with the smallest step in 1..p/2.
  std::optional<Progression> progression;
};

namespace detail {

/// Start and end residue when the sorted set s is cyclically consecutive.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> cyclic_run(const std::vector<std::uint64_t>& s,
                                                                           std::uint64_t p) {
  const std::size_t k = s.size();
  if (k == 0) return std::nullopt;
  if (k == p) return std::make_pair(std::uint64_t{0}, p - 1);
  std::optional<std::size_t> brk;
  for (std::size_t i = 0; i < k; ++i) {
    if (s[(i + 1) % k] != (s[i] + 1) % p) {
      if (brk) return std::nullopt;
      brk = i;
    }
  }
  if (!brk) return std::nullopt;
  return std::make_pair(s[(*brk + 1) % k], s[*brk]);
}

inline std::vector<std::uint64_t> canonical_residues(std::vector<std::uint64_t> points, std::uint64_t p) {
  for (auto x : points) {
    if (x >= p) throw DomainError("residue " + std::to_string(x) + " is not below " + std::to_string(p));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace detail

inline IntervalVerdict is_interval(std::vector<std::uint64_t> points, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  const auto s = detail::canonical_residues(std::move(points), p);
  IntervalVerdict v;
  if (const auto run = detail::cyclic_run(s, p)) {
    v.is_interval = true;
    const auto [start, end] = *run;
    v.plain = start <= end;
    v.a = v.plain ? static_cast<std::int64_t>(start) : static_cast<std::int64_t>(start) - static_cast<std::int64_t>(p);
    v.b = static_cast<std::int64_t>(end);
  }
  if (s.empty()) return v;
  for (std::uint64_t step = 1; step <= std::max<std::uint64_t>(1, p / 2); ++step) {
    const std::uint64_t inv = pow_mod(step, p - 2, p);
    std::vector<std::uint64_t> scaled;
    scaled.reserve(s.size());
    for (auto x : s) scaled.push_back(mul_mod(x, inv, p));
    std::sort(scaled.begin(), scaled.end());
    if (const auto run = detail::cyclic_run(scaled, p)) {
      v.progression = Progression{mul_mod(run->first, step, p), step, s.size()};
      break;
    }
  }
  return v;
}

/// |sin(pi n / p) / sin(pi / p)|, the modulus of a geometric sum of n
/// consecutive p-th roots of unity.
inline double interval_geometric_magnitude(std::uint64_t n, std::uint64_t p) {
  if (n < 1 || n > p) throw DomainError("interval length must lie in [1, p]");
  if (n == p) return 0.0;
  const long double pi = std::numbers::pi_v<long double>;
  const long double pl = static_cast<long double>(p);
  return static_cast<double>(std::abs(std::sin(pi * static_cast<long double>(n) / pl) / std::sin(pi / pl)));
}

/// One-variable formula defining {start, ..., start + length - 1} mod p as
/// a disjunction of equalities x = i.
inline DefinableFormula interval_formula(std::int64_t start, std::uint64_t length, const std::string& var = "x") {
  std::vector<Formula> eqs;
  for (std::uint64_t i = 0; i < length; ++i) {
    eqs.push_back(Formula::atom(Term::variable(var), Term::constant(BigInt(start) + BigInt(i))));
  }
  return DefinableFormula{Formula::disjunction(std::move(eqs)), {var}, {}};
}

/// Residues of a one-variable definable set over F_p.
inline std::vector<std::uint64_t> residues(const DefinableFormula& phi, const Field& field,
                                           const std::vector<Elem>& y = {}, const EvalOptions& opts = {}) {
  if (phi.vars.size() != 1) throw DomainError("expected a formula in one variable");
  if (field.nu() != 1) throw DomainError("residues need a prime field");
  const auto set = enumerate_set(phi, field, y, opts);
  std::vector<std::uint64_t> out;
  out.reserve(set.points.size());
  for (const auto& pt : set.points) out.push_back(pt[0].v);
  return out;
}

/// sum over the residues of e(h x / p), in pairwise order.
inline Complex weyl_sum(const std::vector<std::uint64_t>& xs, std::uint64_t p, std::uint64_t h = 1) {
  PairwiseAccumulator<Complex> acc;
  for (auto x : xs) acc.add(unit_root(mul_mod(h % p, x, p), p));
  return acc.total();
}

struct IntervalConfig {
  EvalOptions eval;
  /// Interval lengths (or co-lengths) up to this value count as bounded.
  std::uint64_t bounded_length = 2;
};

/// Per prime: count, interval verdict, |sum e(x/p)|, the sine ratio of an
/// interval of that length, and |S| / sqrt(p).
inline ExperimentReport interval_experiment(const DefinableFormula& phi, const std::vector<std::uint64_t>& primes,
                                            const IntervalConfig& cfg = {}) {
  ExperimentReport r;
  r.name = "interval";
  r.columns = {"p", "count", "is_interval", "a", "b", "plain", "progression_step", "abs_sum", "sine_ratio",
               "ratio_sqrtp", "bounded"};
  std::vector<std::uint64_t> flagged;
  std::vector<std::uint64_t> unbounded;
  for (auto p : primes) {
    const Field field = Field::prime(p);
    const auto xs = residues(phi, field, {}, cfg.eval);
    const auto v = is_interval(xs, p);
    const double mag = std::abs(weyl_sum(xs, p));
    const double sine = xs.empty() ? 0.0 : interval_geometric_magnitude(xs.size(), p);
    const bool bounded = std::min<std::uint64_t>(xs.size(), p - xs.size()) <= cfg.bounded_length;
    if (v.is_interval) {
      flagged.push_back(p);
      if (!bounded) unbounded.push_back(p);
    }
    r.rows.push_back({std::to_string(p), std::to_string(xs.size()), v.is_interval ? "1" : "0",
                      v.is_interval ? std::to_string(v.a) : "", v.is_interval ? std::to_string(v.b) : "",
                      v.plain ? "1" : "0", v.progression ? std::to_string(v.progression->step) : "",
                      format_double(mag), format_double(sine),
                      format_double(mag / std::sqrt(static_cast<double>(p))), bounded ? "1" : "0"});
  }
  auto join = [](const std::vector<std::uint64_t>& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s.empty() ? std::string("none") : s;
  };
  r.summary.emplace_back("interval primes", join(flagged));
  r.summary.emplace_back("unbounded interval primes", join(unbounded));
  return r;
}

}  // namespace defsum::lab
