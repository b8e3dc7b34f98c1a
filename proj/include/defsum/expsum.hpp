#pragma once

#include "defsum/characters.hpp"
#include "defsum/defset.hpp"
#include "defsum/error.hpp"
#include "defsum/eval_term.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/pairwise_sum.hpp"
#include "defsum/term.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace defsum {

/// f = num / den as a rational function.
struct RationalMap {
  Term num;
  Term den = Term::constant(1);

  RationalMap() = default;
  RationalMap(Term n, Term d = Term::constant(1)) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw DomainError("rational map with zero denominator");
  }
};

/// S(y) = sum over pole-free x in phi(F_q, y) of psi_a(f(x)) chi_m(g(x)).
struct SumSpec {
  DefinableFormula phi;
  RationalMap f;
  RationalMap g;
  std::int64_t psi = 1;
  std::int64_t chi = 0;
};

struct SumReport {
  Complex value{};
  std::uint64_t count = 0;
  std::uint64_t pole_count = 0;
  double trivial_bound = 0;
  double ratio_sqrtq = 0;
  std::uint64_t p = 0;
  unsigned nu = 1;
  std::uint64_t q = 0;
  std::vector<Elem> y;
  std::int64_t a = 0;
  std::int64_t m = 0;
  double cost = 0;
};

namespace detail {

struct SumAccumulator {
  PairwiseAccumulator<Complex> terms;
  std::uint64_t count = 0;
  std::uint64_t poles = 0;
};

struct CompiledMaps {
  CompiledTerm f_num, f_den, g_num, g_den;

  CompiledMaps(const SumSpec& spec, const Field& field) {
    std::map<std::string, int> slot;
    int next = 0;
    for (const auto& v : spec.phi.vars) slot[v] = next++;
    for (const auto& v : spec.phi.params) slot[v] = next++;
    auto lookup = [&](const std::string& n) {
      auto it = slot.find(n);
      if (it == slot.end()) throw DomainError("'" + n + "' in f or g is neither a variable nor a parameter");
      return it->second;
    };
    f_num = CompiledTerm(spec.f.num, field, lookup);
    f_den = CompiledTerm(spec.f.den, field, lookup);
    g_num = CompiledTerm(spec.g.num, field, lookup);
    g_den = CompiledTerm(spec.g.den, field, lookup);
  }
};

/// Shared driver: weight(f(x), g(x)) summed over the pole-free points.
template <class Weight>
SumReport sum_over(const SumSpec& spec, const Field& field, const std::vector<Elem>& y, const EvalOptions& opts,
                   Weight&& weight) {
  const CompiledFormula cf(spec.phi, field, opts.strategy);
  const CompiledMaps maps(spec, field);
  const double extra = static_cast<double>(maps.f_num.size() + maps.f_den.size() + maps.g_num.size() + maps.g_den.size());
  const double cost = cf.cost() + std::pow(static_cast<double>(field.q()), static_cast<double>(cf.var_count())) * extra;
  check_budget(cost, opts.budget);

  auto blocks = scan_blocks<SumAccumulator>(cf, y, opts.workers, [&](const Elem* env, SumAccumulator& acc) {
    const Elem f2 = maps.f_den.eval(field, env);
    const Elem g2 = maps.g_den.eval(field, env);
    if (f2.v == 0 || g2.v == 0) {
      ++acc.poles;
      return;
    }
    const Elem fx = field.div(maps.f_num.eval(field, env), f2);
    const Elem gx = field.div(maps.g_num.eval(field, env), g2);
    acc.terms.add(weight(fx, gx));
    ++acc.count;
  });

  SumReport r;
  std::vector<Complex> totals;
  totals.reserve(blocks.size());
  for (const auto& b : blocks) {
    totals.push_back(b.terms.total());
    r.count += b.count;
    r.pole_count += b.poles;
  }
  r.value = pairwise_sum(totals);
  r.trivial_bound = static_cast<double>(r.count);
  r.ratio_sqrtq = std::abs(r.value) * std::sqrt(static_cast<double>(field.q())) /
                  static_cast<double>(std::max<std::uint64_t>(r.count, 1));
  r.p = field.p();
  r.nu = field.nu();
  r.q = field.q();
  r.y = y;
  r.a = spec.psi;
  r.m = spec.chi;
  r.cost = cost;
  return r;
}

}  // namespace detail

inline SumReport sum(const SumSpec& spec, const Field& field, const std::vector<Elem>& y = {},
                     const EvalOptions& opts = {}) {
  const auto psi = AdditiveCharacter::from_selector(field, spec.psi);
  const MultiplicativeCharacter chi(field, spec.chi);
  return detail::sum_over(spec, field, y, opts, [&](Elem fx, Elem gx) {
    const Complex a = psi.is_trivial() ? Complex{1.0, 0.0} : psi(fx);
    return chi.is_trivial() ? a : a * chi(gx);
  });
}

/// The same sum over F_{q^nu}: phi is evaluated in the extension, f is
/// composed with the trace and g with the norm down to F_q, and the
/// characters are those of F_q. Parameters y are elements of F_q.
inline SumReport companion_sum(const SumSpec& spec, const Field& base, unsigned nu, const std::vector<Elem>& y = {},
                               const EvalOptions& opts = {}) {
  if (nu == 0) throw DomainError("companion degree must be at least 1");
  if (nu == 1) return sum(spec, base, y, opts);
  const FieldTower tower(base, nu, base.table_budget());
  std::vector<Elem> y_top;
  for (auto e : y) y_top.push_back(tower.embed(e));
  const auto psi = AdditiveCharacter::from_selector(base, spec.psi);
  const MultiplicativeCharacter chi(base, spec.chi);
  SumReport r = detail::sum_over(spec, tower.top(), y_top, opts, [&](Elem fx, Elem gx) {
    const Complex a = psi.is_trivial() ? Complex{1.0, 0.0} : psi(tower.trace(fx));
    return chi.is_trivial() ? a : a * chi(tower.norm(gx));
  });
  r.y = y;
  return r;
}

struct TwistReport {
  std::vector<std::vector<std::uint32_t>> exceptions;
  std::vector<double> magnitudes;
  std::uint64_t count = 0;
  double threshold = 0;
  std::uint64_t scanned = 0;
  /// Exceptions divided by p^{n-1}.
  double observed_d = 0;
};

/// Scans h in F_p^n, summing with phase f(x) + h_1 x_1 + ... + h_n x_n under
/// psi_1 and the character chi_m on g. An h is an exception when
/// |S_h| > C (1 + count / sqrt(p)). magnitudes[i] is |S_h| for the i-th h in
/// lexicographic order.
inline TwistReport twist_scan(const SumSpec& spec, const Field& field, double c_threshold,
                              const EvalOptions& opts = {}) {
  if (!spec.phi.params.empty()) throw DomainError("twist scan needs a formula without parameters");
  const std::size_t n = spec.phi.vars.size();
  const std::uint64_t p = field.p();
  const double scan = std::pow(static_cast<double>(p), static_cast<double>(n));
  const CompiledFormula cf(spec.phi, field, opts.strategy);
  check_budget(cf.cost() + scan * std::pow(static_cast<double>(field.q()), static_cast<double>(n)), opts.budget);

  const detail::CompiledMaps maps(spec, field);
  const MultiplicativeCharacter chi(field, spec.chi);
  struct Point {
    std::uint32_t phase;
    std::vector<std::uint32_t> traces;
    Complex weight;
  };
  auto blocks = scan_blocks<std::vector<Point>>(cf, {}, opts.workers, [&](const Elem* env, std::vector<Point>& acc) {
    const Elem f2 = maps.f_den.eval(field, env);
    const Elem g2 = maps.g_den.eval(field, env);
    if (f2.v == 0 || g2.v == 0) return;
    const Elem fx = field.div(maps.f_num.eval(field, env), f2);
    const Elem gx = field.div(maps.g_num.eval(field, env), g2);
    Point pt{field.trace_linear(fx), {}, chi.is_trivial() ? Complex{1.0, 0.0} : chi(gx)};
    for (std::size_t i = 0; i < n; ++i) pt.traces.push_back(field.trace_linear(env[i]));
    acc.push_back(std::move(pt));
  });
  std::vector<Point> points;
  for (auto& b : blocks) points.insert(points.end(), b.begin(), b.end());

  TwistReport r;
  r.count = points.size();
  r.threshold = c_threshold * (1.0 + static_cast<double>(r.count) / std::sqrt(static_cast<double>(p)));
  const auto roots = detail::root_table(p);
  std::vector<std::uint32_t> h(n, 0);
  for (bool done = false; !done;) {
    PairwiseAccumulator<Complex> acc;
    for (const auto& pt : points) {
      std::uint64_t phase = pt.phase;
      for (std::size_t i = 0; i < n; ++i) phase += std::uint64_t{h[i]} * pt.traces[i];
      acc.add(pt.weight * (roots->empty() ? unit_root(phase, p) : (*roots)[phase % p]));
    }
    const double mag = std::abs(acc.total());
    r.magnitudes.push_back(mag);
    if (mag > r.threshold) r.exceptions.push_back(h);
    ++r.scanned;
    done = true;
    for (std::size_t i = n; i-- > 0;) {
      if (++h[i] < p) {
        done = false;
        break;
      }
      h[i] = 0;
    }
  }
  r.observed_d = static_cast<double>(r.exceptions.size()) /
                 std::pow(static_cast<double>(p), static_cast<double>(n) - 1.0);
  return r;
}

/// Largest fraction of the pole-free points on which f takes a single value.
inline double max_level_set_fraction(const SumSpec& spec, const Field& field, const std::vector<Elem>& y = {},
                                     const EvalOptions& opts = {}) {
  const CompiledFormula cf(spec.phi, field, opts.strategy);
  check_budget(cf.cost(), opts.budget);
  const detail::CompiledMaps maps(spec, field);
  auto blocks = scan_blocks<std::map<std::uint32_t, std::uint64_t>>(
      cf, y, opts.workers, [&](const Elem* env, std::map<std::uint32_t, std::uint64_t>& acc) {
        const Elem f2 = maps.f_den.eval(field, env);
        const Elem g2 = maps.g_den.eval(field, env);
        if (f2.v == 0 || g2.v == 0) return;
        ++acc[field.div(maps.f_num.eval(field, env), f2).v];
      });
  std::map<std::uint32_t, std::uint64_t> histogram;
  std::uint64_t total = 0;
  for (const auto& b : blocks) {
    for (const auto& [v, c] : b) {
      histogram[v] += c;
      total += c;
    }
  }
  std::uint64_t best = 0;
  for (const auto& [v, c] : histogram) best = std::max(best, c);
  return total == 0 ? 0.0 : static_cast<double>(best) / static_cast<double>(total);
}

}  // namespace defsum
