#pragma once

#include "defsum/error.hpp"
#include "defsum/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace defsum {

using Exponents = std::vector<std::uint32_t>;

/// A term of the language of rings: a polynomial with integer coefficients.
///
/// The variable list is kept sorted and contains exactly the names that occur
/// with a positive exponent, so two equal polynomials are equal as values.
/// Every exponent vector has one slot per listed variable and no stored
/// coefficient is zero.
class Term {
 public:
  Term() = default;

  static Term constant(BigInt c) {
    Term t;
    if (c != 0) t.monos_.emplace(Exponents{}, std::move(c));
    return t;
  }

  static Term variable(const std::string& name) {
    Term t;
    t.vars_ = {name};
    t.monos_.emplace(Exponents{1}, BigInt(1));
    return t;
  }

  const std::vector<std::string>& variables() const noexcept { return vars_; }
  const std::map<Exponents, BigInt>& monomials() const noexcept { return monos_; }

  bool is_zero() const noexcept { return monos_.empty(); }
  bool is_constant() const noexcept { return vars_.empty(); }
  std::size_t size() const noexcept { return monos_.size(); }

  BigInt constant_term() const {
    auto it = monos_.find(Exponents(vars_.size(), 0));
    return it == monos_.end() ? BigInt(0) : it->second;
  }

  bool mentions(std::string_view name) const {
    return std::binary_search(vars_.begin(), vars_.end(), name);
  }

  std::uint32_t degree_in(std::string_view name) const {
    const auto slot = index_of(name);
    if (slot < 0) return 0;
    std::uint32_t d = 0;
    for (const auto& [e, c] : monos_) d = std::max(d, e[static_cast<std::size_t>(slot)]);
    return d;
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : monos_) {
      std::uint32_t s = 0;
      for (auto k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  /// The polynomial multiplying name^degree when this term is expanded in `name`.
  Term coefficient_of(std::string_view name, std::uint32_t degree) const {
    const auto slot = index_of(name);
    if (slot < 0) return degree == 0 ? *this : Term{};
    Term out;
    out.vars_ = vars_;
    for (const auto& [e, c] : monos_) {
      if (e[static_cast<std::size_t>(slot)] != degree) continue;
      Exponents stripped = e;
      stripped[static_cast<std::size_t>(slot)] = 0;
      out.monos_[stripped] += c;
    }
    out.normalize();
    return out;
  }

  Term operator-() const {
    Term out = *this;
    for (auto& [e, c] : out.monos_) c = -c;
    return out;
  }

  Term& operator+=(const Term& rhs) { return *this = combine(*this, rhs, 1); }
  Term& operator-=(const Term& rhs) { return *this = combine(*this, rhs, -1); }
  Term& operator*=(const Term& rhs) { return *this = multiply(*this, rhs); }

  friend Term operator+(const Term& a, const Term& b) { return combine(a, b, 1); }
  friend Term operator-(const Term& a, const Term& b) { return combine(a, b, -1); }
  friend Term operator*(const Term& a, const Term& b) { return multiply(a, b); }

  Term pow(std::uint32_t exponent) const {
    Term result = Term::constant(1);
    Term base = *this;
    while (exponent != 0) {
      if (exponent & 1U) result *= base;
      exponent >>= 1U;
      if (exponent != 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Term&, const Term&) = default;

 private:
  std::ptrdiff_t index_of(std::string_view name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
    if (it == vars_.end() || *it != name) return -1;
    return it - vars_.begin();
  }

  Term aligned_to(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      where[i] = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), vars_[i]) - vars.begin());
    }
    Term out;
    out.vars_ = vars;
    for (const auto& [e, c] : monos_) {
      Exponents wide(vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) wide[where[i]] = e[i];
      out.monos_.emplace(std::move(wide), c);
    }
    return out;
  }

  static std::vector<std::string> merged_variables(const Term& a, const Term& b) {
    std::vector<std::string> vars;
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(), std::back_inserter(vars));
    return vars;
  }

  static Term combine(const Term& a, const Term& b, int sign) {
    const auto vars = merged_variables(a, b);
    Term out = a.aligned_to(vars);
    const Term rhs = b.aligned_to(vars);
    for (const auto& [e, c] : rhs.monos_) {
      if (sign > 0) {
        out.monos_[e] += c;
      } else {
        out.monos_[e] -= c;
      }
    }
    out.normalize();
    return out;
  }

  static Term multiply(const Term& a, const Term& b) {
    const auto vars = merged_variables(a, b);
    const Term lhs = a.aligned_to(vars);
    const Term rhs = b.aligned_to(vars);
    Term out;
    out.vars_ = vars;
    for (const auto& [ea, ca] : lhs.monos_) {
      for (const auto& [eb, cb] : rhs.monos_) {
        Exponents e(vars.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.monos_[e] += ca * cb;
      }
    }
    out.normalize();
    return out;
  }

  void normalize() {
    std::erase_if(monos_, [](const auto& kv) { return kv.second == 0; });
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : monos_) {
      for (std::size_t i = 0; i < e.size(); ++i) used[i] = used[i] || e[i] != 0;
    }
    if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (used[i]) vars.push_back(vars_[i]);
    }
    std::map<Exponents, BigInt> monos;
    for (auto& [e, c] : monos_) {
      Exponents narrow;
      narrow.reserve(vars.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (used[i]) narrow.push_back(e[i]);
      }
      monos.emplace(std::move(narrow), std::move(c));
    }
    vars_ = std::move(vars);
    monos_ = std::move(monos);
  }

  std::vector<std::string> vars_;
  std::map<Exponents, BigInt> monos_;
};

/// Infix rendering accepted back by the formula parser, e.g. `3*x^2*y - y + 7`.
inline std::string to_string(const Term& t) {
  if (t.is_zero()) return "0";
  std::string out;
  bool first = true;
  const auto& vars = t.variables();
  for (auto it = t.monomials().rbegin(); it != t.monomials().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = c < 0;
    const BigInt magnitude = negative ? BigInt(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += vars[i];
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    if (factors.empty()) {
      out += magnitude.str();
    } else if (magnitude == 1) {
      out += factors;
    } else {
      out += magnitude.str() + "*" + factors;
    }
  }
  return out;
}

}  // namespace defsum
