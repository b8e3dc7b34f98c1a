#pragma once

#include "defsum/characters.hpp"
#include "defsum/defset.hpp"
#include "defsum/error.hpp"
#include "defsum/eval_term.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/numeric.hpp"
#include "defsum/term.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace defsum {

/// (i)_j = i (i - 1) ... (i - j + 1).
inline BigInt falling_factorial(std::uint64_t i, std::uint64_t j) {
  if (j > i) throw DomainError("falling factorial needs j <= i");
  BigInt out = 1;
  for (std::uint64_t k = 0; k < j; ++k) out *= i - k;
  return out;
}

/// y_j = sum_{i=j..e} (i)_j x_i for j = 1..e (inputs and outputs are 1-based in meaning).
template <class T>
std::vector<T> forward_triangular(const std::vector<T>& x) {
  const std::size_t e = x.size();
  std::vector<T> y(e, T(0));
  for (std::size_t j = 1; j <= e; ++j) {
    for (std::size_t i = j; i <= e; ++i) y[j - 1] += T(falling_factorial(i, j)) * x[i - 1];
  }
  return y;
}

/// sum_{j=1..e} (-1)^{j+1} y_j / j!, which recovers x_1 + ... + x_e from forward_triangular(x).
inline Rational inclusion_exclusion_total(const std::vector<Rational>& y) {
  if (y.empty()) throw DomainError("inclusion-exclusion needs e >= 1");
  Rational total = 0;
  BigInt factorial = 1;
  for (std::size_t j = 1; j <= y.size(); ++j) {
    factorial *= j;
    const Rational term = y[j - 1] / Rational(factorial);
    total += j % 2 == 1 ? term : Rational(-term);
  }
  return total;
}

struct Witness {
  std::string var;
  Term h;
};

/// The shape  f_1 = ... = f_r = 0  and  exists z_1 ... z_k with h_j(x, y, z_j) = 0,
/// where each h_j involves only its own witness variable z_j.
class ExistentialBlock {
 public:
  ExistentialBlock(std::vector<std::string> vars, std::vector<std::string> params, std::vector<Term> equations,
                   std::vector<Witness> witnesses)
      : vars_(std::move(vars)), params_(std::move(params)), equations_(std::move(equations)),
        witnesses_(std::move(witnesses)) {
    std::vector<std::string> base = vars_;
    base.insert(base.end(), params_.begin(), params_.end());
    auto is_base = [&](const std::string& n) { return std::find(base.begin(), base.end(), n) != base.end(); };
    for (const auto& eq : equations_) {
      for (const auto& n : eq.variables()) {
        if (!is_base(n)) throw DomainError("equation mentions '" + n + "', which is not a variable or parameter");
      }
    }
    for (std::size_t j = 0; j < witnesses_.size(); ++j) {
      const auto& w = witnesses_[j];
      if (is_base(w.var)) throw DomainError("witness '" + w.var + "' clashes with a variable or parameter");
      for (std::size_t k = 0; k < j; ++k) {
        if (witnesses_[k].var == w.var) throw DomainError("witness '" + w.var + "' is declared twice");
      }
      for (const auto& n : w.h.variables()) {
        if (n != w.var && !is_base(n)) {
          throw DomainError("witness equation for '" + w.var + "' mentions '" + n + "': witnesses must not be coupled");
        }
      }
    }
  }

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  const std::vector<std::string>& params() const noexcept { return params_; }
  const std::vector<Term>& equations() const noexcept { return equations_; }
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }

  /// The defining formula of the projection: the equations and the existential witness system.
  DefinableFormula phi() const {
    std::vector<Formula> parts;
    for (const auto& eq : equations_) parts.push_back(Formula::atom(eq, Term{}));
    if (!witnesses_.empty()) {
      std::vector<Formula> ws;
      for (const auto& w : witnesses_) ws.push_back(Formula::atom(w.h, Term{}));
      Formula body = Formula::conjunction(std::move(ws));
      for (std::size_t j = witnesses_.size(); j-- > 0;) body = Formula::exists(witnesses_[j].var, body);
      parts.push_back(body);
    }
    return DefinableFormula{Formula::conjunction(std::move(parts)), vars_, params_};
  }

  /// Only the equations f_i = 0, as a formula in x with parameters y.
  DefinableFormula base_formula() const {
    std::vector<Formula> parts;
    for (const auto& eq : equations_) parts.push_back(Formula::atom(eq, Term{}));
    return DefinableFormula{Formula::conjunction(std::move(parts)), vars_, params_};
  }

 private:
  std::vector<std::string> vars_;
  std::vector<std::string> params_;
  std::vector<Term> equations_;
  std::vector<Witness> witnesses_;
};

struct FiberData {
  std::uint64_t e = 0;
  /// Points x with at least one witness tuple, mapped to the number of witness tuples.
  std::map<std::vector<Elem>, std::uint64_t> fibers;
};

/// For every x satisfying the equations, the number of witness tuples
/// (z_1, ..., z_k) in F_q^k with every h_j = 0: the product of the root counts
/// of the individual h_j. Points with no witness are omitted.
inline FiberData fiber_multiplicities(const ExistentialBlock& block, const Field& field,
                                      const std::vector<Elem>& y = {}, const EvalOptions& opts = {}) {
  const CompiledFormula cf(block.base_formula(), field, opts.strategy);
  const std::size_t n = block.vars().size();
  const std::size_t k = block.witnesses().size();
  const auto z_slot = static_cast<int>(n + block.params().size());
  std::vector<CompiledTerm> hs;
  for (const auto& w : block.witnesses()) {
    std::map<std::string, int> slot;
    int next = 0;
    for (const auto& v : block.vars()) slot[v] = next++;
    for (const auto& v : block.params()) slot[v] = next++;
    slot[w.var] = z_slot;
    hs.emplace_back(w.h, field, [&](const std::string& name) {
      auto it = slot.find(name);
      return it == slot.end() ? -1 : it->second;
    });
  }
  const double q = static_cast<double>(field.q());
  double per_point = 0;
  for (const auto& h : hs) per_point += q * static_cast<double>(std::max<std::size_t>(1, h.size()));
  check_budget(cf.cost() + std::pow(q, static_cast<double>(n)) * per_point, opts.budget);

  using Fibers = std::vector<std::pair<std::vector<Elem>, std::uint64_t>>;
  auto blocks = scan_blocks<Fibers>(cf, y, opts.workers, [&](const Elem* env, Fibers& acc) {
    std::vector<Elem> scratch(env, env + n + block.params().size());
    scratch.push_back(Elem{0});
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < k && total != 0; ++j) {
      std::uint64_t roots = 0;
      for (std::uint32_t z = 0; z < field.q(); ++z) {
        scratch[static_cast<std::size_t>(z_slot)] = Elem{z};
        if (hs[j].eval(field, scratch.data()).v == 0) ++roots;
      }
      total *= roots;
    }
    if (total != 0) acc.emplace_back(std::vector<Elem>(env, env + n), total);
  });
  FiberData out;
  for (auto& b : blocks) {
    for (auto& [x, m] : b) {
      out.e = std::max(out.e, m);
      out.fibers.emplace(std::move(x), m);
    }
  }
  return out;
}

template <class T>
using PointWeight = std::function<T(const std::vector<Elem>&)>;

/// sum over x of (m_x)_j beta(x): the beta-weighted count of ordered j-tuples
/// of pairwise distinct witness tuples above each x.
template <class T>
T fiber_power_sum(const FiberData& data, const PointWeight<T>& beta, std::uint64_t j) {
  if (j == 0) throw DomainError("fiber power needs j >= 1");
  T total(0);
  for (const auto& [x, m] : data.fibers) {
    if (m < j) continue;
    total += T(falling_factorial(m, j).template convert_to<double>()) * beta(x);
  }
  return total;
}

template <>
inline Rational fiber_power_sum<Rational>(const FiberData& data, const PointWeight<Rational>& beta, std::uint64_t j) {
  if (j == 0) throw DomainError("fiber power needs j >= 1");
  Rational total(0);
  for (const auto& [x, m] : data.fibers) {
    if (m < j) continue;
    total += Rational(falling_factorial(m, j)) * beta(x);
  }
  return total;
}

template <class T>
T fiber_power_sum(const ExistentialBlock& block, const Field& field, const std::vector<Elem>& y,
                  const PointWeight<T>& beta, std::uint64_t j, const EvalOptions& opts = {}) {
  return fiber_power_sum<T>(fiber_multiplicities(block, field, y, opts), beta, j);
}

template <class T>
struct ReductionReport {
  bool equal = false;
  T lhs{};
  T rhs{};
  std::uint64_t e = 0;
};

namespace detail {

inline bool reduction_close(const Rational& a, const Rational& b) { return a == b; }
inline bool reduction_close(const Complex& a, const Complex& b) {
  return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a));
}
inline Rational reduction_scale(const Rational& v, const BigInt& factorial) { return v / Rational(factorial); }
inline Complex reduction_scale(const Complex& v, const BigInt& factorial) {
  return v / factorial.convert_to<double>();
}

}  // namespace detail

/// Compares the direct sum of beta over the projected set with
/// sum_{j=1..e} (-1)^{j+1} / j! * fiber_power_sum(j). The two sides are
/// computed independently: the left by deciding the block formula point by
/// point, the right from fiber counts.
template <class T>
ReductionReport<T> verify_reduction(const ExistentialBlock& block, const Field& field, const std::vector<Elem>& y,
                                    const PointWeight<T>& beta, const EvalOptions& opts = {}) {
  ReductionReport<T> r;
  const auto points = enumerate_set(block.phi(), field, y, opts);
  T lhs(0);
  for (const auto& x : points.points) lhs += beta(x);
  const FiberData data = fiber_multiplicities(block, field, y, opts);
  T rhs(0);
  BigInt factorial = 1;
  for (std::uint64_t j = 1; j <= data.e; ++j) {
    factorial *= j;
    const T term = detail::reduction_scale(fiber_power_sum<T>(data, beta, j), factorial);
    if (j % 2 == 1) {
      rhs += term;
    } else {
      rhs -= term;
    }
  }
  r.lhs = lhs;
  r.rhs = rhs;
  r.e = data.e;
  r.equal = detail::reduction_close(lhs, rhs);
  return r;
}

}  // namespace defsum
