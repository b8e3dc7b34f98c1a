#pragma once

#include "defsum/error.hpp"
#include "defsum/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace defsum {

/// Monic characteristic polynomial T^L + c_{L-1} T^{L-1} + ... + c_0, stored
/// low degree first. A sequence S satisfies it when
/// S_{n+L} + c_{L-1} S_{n+L-1} + ... + c_0 S_n = 0 for every n.
struct Recurrence {
  std::vector<Rational> poly{Rational(1)};
  std::size_t order() const noexcept { return poly.size() - 1; }
};

/// Minimal linear recurrence of an exact sequence (Berlekamp-Massey over Q).
/// Throws SequenceError when the minimal order L has 2L > N, since the data
/// then cannot pin the recurrence down.
inline Recurrence min_recurrence(const std::vector<Rational>& s) {
  std::vector<Rational> c{Rational(1)};
  std::vector<Rational> b{Rational(1)};
  std::size_t l = 0;
  std::size_t m = 1;
  Rational last = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rational d = s[n];
    for (std::size_t i = 1; i <= l && i < c.size(); ++i) d += c[i] * s[n - i];
    if (d == 0) {
      ++m;
      continue;
    }
    const Rational coef = d / last;
    std::vector<Rational> next = c;
    if (next.size() < b.size() + m) next.resize(b.size() + m, Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) next[i + m] -= coef * b[i];
    if (2 * l <= n) {
      b = c;
      l = n + 1 - l;
      last = d;
      m = 1;
    } else {
      ++m;
    }
    c = std::move(next);
  }
  if (2 * l > s.size()) {
    throw SequenceError("no linear recurrence of order at most " + std::to_string(s.size() / 2) + " fits " +
                        std::to_string(s.size()) + " terms");
  }
  c.resize(l + 1, Rational(0));
  Recurrence r;
  r.poly.assign(l + 1, Rational(0));
  for (std::size_t k = 0; k <= l; ++k) r.poly[k] = c[l - k];
  return r;
}

inline Recurrence min_recurrence(const std::vector<BigInt>& s) {
  std::vector<Rational> r(s.begin(), s.end());
  return min_recurrence(r);
}

inline bool annihilates(const Recurrence& rec, const std::vector<Rational>& s) {
  const std::size_t l = rec.order();
  for (std::size_t n = l; n < s.size(); ++n) {
    Rational acc = 0;
    for (std::size_t k = 0; k <= l; ++k) acc += rec.poly[k] * s[n - l + k];
    if (acc != 0) return false;
  }
  return true;
}

/// S_{N+1} from the last L terms.
inline Rational predict_next(const std::vector<Rational>& s, const Recurrence& rec) {
  const std::size_t l = rec.order();
  if (s.size() < l) throw SequenceError("sequence shorter than the recurrence order");
  Rational acc = 0;
  for (std::size_t k = 0; k < l; ++k) acc -= rec.poly[k] * s[s.size() - l + k];
  return acc;
}

/// Least-squares Hankel fit for sequences known only numerically.
struct NumericRecurrence {
  std::vector<std::complex<double>> poly{1.0};
  double residual = 0;
  std::size_t order() const noexcept { return poly.size() - 1; }
};

inline NumericRecurrence fit_recurrence_numeric(const std::vector<std::complex<double>>& s, double tol = 1e-8) {
  double scale = 0;
  for (const auto& v : s) scale = std::max(scale, std::abs(v));
  if (scale == 0) return {};
  for (std::size_t l = 1; 2 * l <= s.size(); ++l) {
    const auto rows = static_cast<Eigen::Index>(s.size() - l);
    Eigen::MatrixXcd a(rows, static_cast<Eigen::Index>(l));
    Eigen::VectorXcd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < l; ++k) a(r, static_cast<Eigen::Index>(k)) = s[static_cast<std::size_t>(r) + k];
      rhs(r) = -s[static_cast<std::size_t>(r) + l];
    }
    const Eigen::VectorXcd sol = a.completeOrthogonalDecomposition().solve(rhs);
    const double res = (a * sol - rhs).norm() / std::max(rhs.norm(), 1e-300);
    if (res <= tol) {
      NumericRecurrence out;
      out.poly.assign(l + 1, 1.0);
      for (std::size_t k = 0; k < l; ++k) out.poly[k] = sol(static_cast<Eigen::Index>(k));
      out.residual = res;
      return out;
    }
  }
  throw SequenceError("no numeric recurrence of order at most half the sequence length");
}

namespace detail {

using QPoly = std::vector<Rational>;

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline QPoly derivative(const QPoly& a) {
  QPoly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * Rational(static_cast<long long>(i)));
  trim(out);
  return out;
}

inline QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder of a by a nonzero b.
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly quot(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    quot[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

inline QPoly monic(QPoly a) {
  trim(a);
  if (a.empty()) return a;
  const Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Yun's algorithm: squarefree factors with their multiplicities.
inline std::vector<std::pair<QPoly, unsigned>> squarefree(const QPoly& f) {
  std::vector<std::pair<QPoly, unsigned>> out;
  QPoly a = monic(f);
  if (a.size() <= 1) return out;
  const QPoly da = derivative(a);
  QPoly c = gcd(a, da);
  QPoly w = divmod(a, c).first;
  QPoly y = divmod(da, c).first;
  QPoly z = sub(y, derivative(w));
  for (unsigned i = 1; w.size() > 1; ++i) {
    QPoly g = gcd(w, z);
    if (g.size() > 1) out.emplace_back(g, i);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = sub(y, derivative(w));
  }
  return out;
}

inline std::complex<double> horner(const std::vector<double>& c, std::complex<double> x) {
  std::complex<double> acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

/// Roots of a squarefree monic polynomial: companion-matrix eigenvalues
/// polished by Newton steps. Returns each root with its relative residual.
inline std::vector<std::pair<std::complex<double>, double>> simple_roots(const QPoly& g) {
  const std::size_t d = g.size() - 1;
  std::vector<double> c(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) c[i] = g[i].convert_to<double>();
  std::vector<double> dc;
  for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<double>(i));
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -c[i];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  std::vector<std::pair<std::complex<double>, double>> out;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d); ++i) {
    std::complex<double> r = solver.eigenvalues()(i);
    for (int it = 0; it < 60; ++it) {
      const std::complex<double> fv = horner(c, r);
      const std::complex<double> dv = horner(dc, r);
      if (std::abs(dv) == 0) break;
      const std::complex<double> step = fv / dv;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
    double scale = 0;
    double power = 1;
    for (double coef : c) {
      scale += std::abs(coef) * power;
      power *= std::abs(r);
    }
    out.emplace_back(r, std::abs(horner(c, r)) / std::max(scale, 1e-300));
  }
  return out;
}

}  // namespace detail

struct WeilRoot {
  std::complex<double> value;
  /// Multiplicity as a root of the characteristic polynomial.
  unsigned multiplicity = 1;
  /// 2 log_q |value|.
  double weight_exact = 0;
  int weight = 0;
  bool classified = false;
  double residual = 0;
};

struct WeilSpectrum {
  std::uint64_t q = 0;
  std::vector<WeilRoot> roots;
  std::optional<int> max_weight;
  std::vector<std::string> warnings;
};

inline constexpr double kWeightTolerance = 0.05;
inline constexpr double kRootResidualTolerance = 1e-10;

/// Characteristic roots with integer weights w, |root| ~ q^{w/2}. Roots are
/// ordered by decreasing modulus, then by argument.
inline WeilSpectrum classify_weights(const Recurrence& rec, std::uint64_t q) {
  if (q < 2) throw DomainError("weights need q >= 2");
  WeilSpectrum out;
  out.q = q;
  for (const auto& [factor, mult] : detail::squarefree(rec.poly)) {
    for (const auto& [r, residual] : detail::simple_roots(factor)) {
      WeilRoot root;
      root.value = r;
      root.multiplicity = mult;
      root.residual = residual;
      if (residual > kRootResidualTolerance) {
        out.warnings.push_back("root " + std::to_string(r.real()) + (r.imag() < 0 ? "" : "+") + std::to_string(r.imag()) +
                               "i refined only to relative residual " + std::to_string(residual));
      }
      const double mod = std::abs(r);
      if (mod > 0) {
        root.weight_exact = 2.0 * std::log(mod) / std::log(static_cast<double>(q));
        root.weight = static_cast<int>(std::lround(root.weight_exact));
        root.classified = std::abs(root.weight_exact - root.weight) < kWeightTolerance;
      }
      if (!root.classified) {
        out.warnings.push_back("root of modulus " + std::to_string(mod) + " has no integer weight");
      } else if (!out.max_weight || root.weight > *out.max_weight) {
        out.max_weight = root.weight;
      }
      out.roots.push_back(root);
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const WeilRoot& a, const WeilRoot& b) {
    const double ma = std::abs(a.value);
    const double mb = std::abs(b.value);
    if (std::abs(ma - mb) > 1e-9 * std::max(1.0, ma)) return ma > mb;
    return std::arg(a.value) < std::arg(b.value);
  });
  return out;
}

/// Least-squares coefficients m_j with S_nu = sum_j m_j root_j^nu, one per
/// root (roots of higher multiplicity also get nu^k root^nu terms, whose
/// coefficients are returned in `extra_norm` as a single size).
struct RootCoefficients {
  std::vector<std::complex<double>> m;
  double extra_norm = 0;
  double residual = 0;
};

inline RootCoefficients fit_root_coefficients(const WeilSpectrum& spec, const std::vector<Rational>& s) {
  std::vector<std::pair<std::size_t, unsigned>> columns;
  for (std::size_t j = 0; j < spec.roots.size(); ++j) {
    for (unsigned k = 0; k < spec.roots[j].multiplicity; ++k) columns.emplace_back(j, k);
  }
  RootCoefficients out;
  out.m.assign(spec.roots.size(), 0.0);
  if (columns.empty() || s.empty()) return out;
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(columns.size()));
  Eigen::VectorXcd b(static_cast<Eigen::Index>(s.size()));
  for (std::size_t n = 0; n < s.size(); ++n) {
    const double nu = static_cast<double>(n + 1);
    b(static_cast<Eigen::Index>(n)) = s[n].convert_to<double>();
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto [j, k] = columns[c];
      a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(c)) =
          std::pow(nu, static_cast<double>(k)) * std::pow(spec.roots[j].value, nu);
    }
  }
  const Eigen::VectorXcd sol = a.completeOrthogonalDecomposition().solve(b);
  out.residual = (a * sol - b).norm() / std::max(b.norm(), 1e-300);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto [j, k] = columns[c];
    if (k == 0) {
      out.m[j] = sol(static_cast<Eigen::Index>(c));
    } else {
      out.extra_norm = std::max(out.extra_norm, std::abs(sol(static_cast<Eigen::Index>(c))));
    }
  }
  return out;
}

/// Z(T) = numerator / denominator, both with constant term 1, low degree first.
struct ZetaFunction {
  std::vector<Rational> numerator{Rational(1)};
  std::vector<Rational> denominator{Rational(1)};
  /// Signed root multiplicities: +m for a factor (1 - alpha T)^{-m}.
  std::vector<std::pair<std::complex<double>, int>> factors;
};

namespace detail {

/// nu * [T^nu] log P(T) for nu = 1..n, where P(0) = 1.
inline std::vector<Rational> log_derivative_terms(const QPoly& p, std::size_t n) {
  std::vector<Rational> inv(n, Rational(0));
  if (n > 0) inv[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= k && i < p.size(); ++i) acc -= p[i] * inv[k - i];
    inv[k] = acc;
  }
  const QPoly dp = derivative(p);
  std::vector<Rational> out(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    Rational acc = 0;
    for (std::size_t i = 0; i <= k && i < dp.size(); ++i) acc += dp[i] * inv[k - i];
    out[k] = acc;
  }
  return out;
}

inline QPoly round_to_rational(const std::vector<std::complex<double>>& c) {
  QPoly out;
  for (const auto& v : c) {
    const double r = std::round(v.real());
    if (std::abs(v.imag()) > 1e-6 || std::abs(v.real() - r) > 1e-6 * std::max(1.0, std::abs(v.real()))) {
      throw SequenceError("zeta coefficient " + std::to_string(v.real()) + " is not an integer");
    }
    out.emplace_back(static_cast<long long>(r));
  }
  return out;
}

}  // namespace detail

/// Z(T) = exp(sum_nu S_nu T^nu / nu) as a rational function, from the roots of
/// the recurrence and integer multiplicities fitted to the sequence. The
/// result is checked exactly: the logarithmic expansion of the returned
/// rational function must reproduce every S_nu.
inline ZetaFunction zeta_series(const std::vector<Rational>& s, const Recurrence& rec, std::uint64_t q = 2) {
  if (!annihilates(rec, s)) throw SequenceError("recurrence does not annihilate the sequence");
  const WeilSpectrum spec = classify_weights(rec, std::max<std::uint64_t>(q, 2));
  const RootCoefficients coeffs = fit_root_coefficients(spec, s);
  if (coeffs.extra_norm > 1e-6) throw SequenceError("sequence is not a signed sum of powers of its roots");

  std::vector<std::complex<double>> num{1.0};
  std::vector<std::complex<double>> den{1.0};
  ZetaFunction z;
  for (std::size_t j = 0; j < spec.roots.size(); ++j) {
    const double mr = std::round(coeffs.m[j].real());
    if (std::abs(coeffs.m[j] - std::complex<double>(mr, 0)) > 1e-6) {
      throw SequenceError("root multiplicity " + std::to_string(coeffs.m[j].real()) + " is not an integer");
    }
    const int m = static_cast<int>(mr);
    if (m == 0) continue;
    z.factors.emplace_back(spec.roots[j].value, m);
    auto& target = m > 0 ? den : num;
    for (int k = 0; k < std::abs(m); ++k) {
      std::vector<std::complex<double>> next(target.size() + 1, 0.0);
      for (std::size_t i = 0; i < target.size(); ++i) {
        next[i] += target[i];
        next[i + 1] -= spec.roots[j].value * target[i];
      }
      target = std::move(next);
    }
  }
  z.numerator = detail::round_to_rational(num);
  z.denominator = detail::round_to_rational(den);
  detail::trim(z.numerator);
  detail::trim(z.denominator);

  const auto ln = detail::log_derivative_terms(z.numerator, s.size());
  const auto ld = detail::log_derivative_terms(z.denominator, s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (ln[k] - ld[k] != s[k]) {
      throw SequenceError("zeta expansion disagrees with S_" + std::to_string(k + 1));
    }
  }
  return z;
}

}  // namespace defsum
