#pragma once

#include "defsum/numeric.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace defsum::fp_poly {

/// Dense polynomial over F_p, coefficient i multiplies X^i. Trimmed: no
/// trailing zeros, the zero polynomial is empty.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

/// Remainder of a modulo a nonzero b.
inline Poly rem(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = pow_mod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = mul_mod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mul_mod(factor, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

inline Poly mul_rem(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mul_mod(a[i], b[j], p)) % p;
  }
  return rem(std::move(out), f, p);
}

inline Poly pow_rem(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly result = rem({1}, f, p);
  base = rem(std::move(base), f, p);
  while (e != 0) {
    if (e & 1U) result = mul_rem(result, base, f, p);
    e >>= 1U;
    if (e != 0) base = mul_rem(base, base, f, p);
  }
  return result;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test for a monic f of degree n >= 1: X^(p^n) = X mod f and
/// gcd(X^(p^(n/r)) - X, f) = 1 for every prime r dividing n.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  const Poly x = rem({0, 1}, f, p);
  std::vector<Poly> frob{x};
  for (std::size_t i = 1; i <= n; ++i) frob.push_back(pow_rem(frob.back(), p, f, p));
  if (frob[n] != x) return false;
  for (auto r : prime_factors(n)) {
    const Poly g = gcd(f, sub(frob[n / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace defsum::fp_poly
