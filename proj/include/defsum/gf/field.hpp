#pragma once

#include "defsum/error.hpp"
#include "defsum/gf/fp_poly.hpp"
#include "defsum/numeric.hpp"

#include <atomic>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace defsum {

/// A field element, stored as its enumeration index: the coefficient vector
/// (c_0, ..., c_{nu-1}) in the power basis packs to c_0 + c_1 p + ... so that
/// index order is the lexicographic coefficient order and the prime subfield
/// element c has index c.
struct Elem {
  std::uint32_t v = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

inline constexpr std::uint64_t kDefaultTableBudget = std::uint64_t{1} << 24;

/// The finite field F_q, q = p^nu, with a canonical modulus and generator.
///
/// Copies share immutable tables. Extension fields keep exponential,
/// logarithm and Zech-logarithm tables; prime fields use direct modular
/// arithmetic and build the logarithm table on first use.
class Field {
 public:
  static Field prime(std::uint64_t p, std::uint64_t table_budget = kDefaultTableBudget) {
    return make(p, 1, table_budget);
  }

  /// Field with p^nu elements. The modulus is the monic irreducible of degree
  /// nu with the smallest index c_0 + c_1 p + ... + c_{nu-1} p^{nu-1}; the
  /// generator is the smallest element of order q - 1.
  static Field make(std::uint64_t p, unsigned nu, std::uint64_t table_budget = kDefaultTableBudget) {
    if (p >= (std::uint64_t{1} << 32) || !is_prime(p)) {
      throw DomainError("characteristic " + std::to_string(p) + " is not a prime below 2^32");
    }
    if (nu < 1 || nu > 12) throw DomainError("extension degree must be in 1..12, got " + std::to_string(nu));
    double q_estimate = 1;
    for (unsigned i = 0; i < nu; ++i) q_estimate *= static_cast<double>(p);
    if (nu > 1 && q_estimate > static_cast<double>(table_budget)) throw BudgetError(q_estimate, static_cast<double>(table_budget));

    auto d = std::make_shared<Data>();
    d->p = p;
    d->nu = nu;
    d->q = static_cast<std::uint64_t>(q_estimate);
    d->table_budget = table_budget;
    d->place.assign(nu, 1);
    for (unsigned i = 1; i < nu; ++i) d->place[i] = d->place[i - 1] * p;
    if (nu == 1) {
      d->generator = Elem{static_cast<std::uint32_t>(smallest_primitive_root(p))};
    } else {
      d->modulus = find_modulus(p, nu);
      d->generator = find_generator(*d);
      build_tables(*d);
    }
    Field f(std::move(d));
    if (nu > 1) f.build_trace_basis();
    return f;
  }

  std::uint64_t p() const noexcept { return d_->p; }
  unsigned nu() const noexcept { return d_->nu; }
  std::uint64_t q() const noexcept { return d_->q; }
  std::uint64_t table_budget() const noexcept { return d_->table_budget; }

  /// Coefficients c_0..c_nu of the monic modulus; empty for a prime field.
  const fp_poly::Poly& modulus() const noexcept { return d_->modulus; }
  Elem generator() const noexcept { return d_->generator; }

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }

  Elem element(std::uint64_t index) const {
    if (index >= q()) throw DomainError("element index " + std::to_string(index) + " outside field of size " + std::to_string(q()));
    return Elem{static_cast<std::uint32_t>(index)};
  }

  /// Image of an integer under Z -> F_q.
  Elem from_int(const BigInt& c) const { return Elem{static_cast<std::uint32_t>(mod_reduce(c, p()))}; }
  Elem from_int(std::int64_t c) const { return Elem{static_cast<std::uint32_t>(mod_reduce(c, p()))}; }

  std::vector<std::uint64_t> coefficients(Elem x) const {
    std::vector<std::uint64_t> out(nu());
    std::uint64_t v = x.v;
    for (auto& c : out) {
      c = v % p();
      v /= p();
    }
    return out;
  }

  Elem from_coefficients(const std::vector<std::uint64_t>& coeffs) const {
    if (coeffs.size() > nu()) throw DomainError("too many coefficients for extension degree");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += (coeffs[i] % p()) * d_->place[i];
    return Elem{static_cast<std::uint32_t>(v)};
  }

  bool in_prime_subfield(Elem x) const noexcept { return x.v < p(); }

  Elem add(Elem a, Elem b) const noexcept {
    if (nu() == 1) {
      const std::uint64_t s = std::uint64_t{a.v} + b.v;
      return Elem{static_cast<std::uint32_t>(s >= p() ? s - p() : s)};
    }
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    const auto& t = *d_;
    const std::uint32_t la = t.log[a.v];
    std::uint32_t diff = t.log[b.v] + (la > t.log[b.v] ? t.order : 0) - la;
    const std::uint32_t z = t.zech[diff];
    if (z == kNoLog) return Elem{0};
    std::uint64_t e = std::uint64_t{la} + z;
    if (e >= t.order) e -= t.order;
    return Elem{t.exp[e]};
  }

  Elem neg(Elem a) const noexcept {
    if (a.v == 0) return a;
    if (nu() == 1) return Elem{static_cast<std::uint32_t>(p() - a.v)};
    if (p() == 2) return a;
    const auto& t = *d_;
    std::uint64_t e = std::uint64_t{t.log[a.v]} + t.order / 2;
    if (e >= t.order) e -= t.order;
    return Elem{t.exp[e]};
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (nu() == 1) return Elem{static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % p())};
    if (a.v == 0 || b.v == 0) return Elem{0};
    const auto& t = *d_;
    std::uint64_t e = std::uint64_t{t.log[a.v]} + t.log[b.v];
    if (e >= t.order) e -= t.order;
    return Elem{t.exp[e]};
  }

  Elem inv(Elem a) const {
    if (a.v == 0) throw DomainError("division by zero in F_" + std::to_string(q()));
    if (nu() == 1) return Elem{static_cast<std::uint32_t>(pow_mod(a.v, p() - 2, p()))};
    const auto& t = *d_;
    const std::uint32_t l = t.log[a.v];
    return Elem{t.exp[l == 0 ? 0 : t.order - l]};
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const noexcept {
    if (e == 0) return one();
    if (a.v == 0) return a;
    if (nu() == 1) return Elem{static_cast<std::uint32_t>(pow_mod(a.v, e, p()))};
    const auto& t = *d_;
    const std::uint64_t r = e < t.order ? e : e % t.order;
    const std::uint64_t l = t.log[a.v];
    const std::uint64_t k = r < (std::uint64_t{1} << 32) ? l * r % t.order
                                                          : static_cast<std::uint64_t>(static_cast<unsigned __int128>(l) * r % t.order);
    return Elem{t.exp[k]};
  }

  /// Direct table access for hot loops; valid only when has_log_tables().
  bool has_log_tables() const noexcept { return nu() > 1; }
  std::uint64_t group_order() const noexcept { return q() - 1; }
  std::uint32_t log_unchecked(Elem x) const noexcept { return d_->log[x.v]; }
  Elem exp_unchecked(std::uint64_t k) const noexcept { return Elem{d_->exp[k]}; }

  Elem frobenius(Elem a) const noexcept { return pow(a, p()); }

  /// Discrete logarithm to the canonical generator.
  std::uint64_t dlog(Elem x) const {
    if (x.v == 0) throw DomainError("discrete logarithm of zero");
    ensure_log_table();
    return d_->log[x.v];
  }

  /// g^k for the canonical generator g.
  Elem exp(std::uint64_t k) const {
    if (nu() > 1 || d_->log_ready) {
      return Elem{d_->exp[k % (q() - 1)]};
    }
    return pow(generator(), k);
  }

  /// Absolute trace to F_p as the sum of the Frobenius orbit x, x^p, x^{p^2}, ...
  std::uint32_t trace_to_prime(Elem x) const {
    Elem acc = zero();
    Elem conj = x;
    for (unsigned i = 0; i < nu(); ++i) {
      acc = add(acc, conj);
      conj = frobenius(conj);
    }
    return acc.v;
  }

  /// Absolute norm to F_p as the product of the Frobenius orbit.
  std::uint32_t norm_to_prime(Elem x) const {
    Elem acc = one();
    Elem conj = x;
    for (unsigned i = 0; i < nu(); ++i) {
      acc = mul(acc, conj);
      conj = frobenius(conj);
    }
    return acc.v;
  }

  /// Trace through the precomputed traces of the basis 1, T, ..., T^{nu-1}.
  std::uint32_t trace_linear(Elem x) const noexcept {
    if (nu() == 1) return x.v;
    std::uint64_t acc = 0;
    std::uint64_t v = x.v;
    for (unsigned i = 0; i < nu(); ++i) {
      acc += (v % p()) * d_->basis_trace[i];
      v /= p();
    }
    return static_cast<std::uint32_t>(acc % p());
  }

  /// Norm as the single power x^{(q-1)/(p-1)}.
  std::uint32_t norm_power(Elem x) const noexcept { return pow(x, (q() - 1) / (p() - 1)).v; }

  std::string to_string(Elem x) const {
    if (nu() == 1) return std::to_string(x.v);
    return poly_string(coefficients(x), "T");
  }

  std::string modulus_string() const { return nu() == 1 ? std::string{} : poly_string(modulus(), "T"); }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.d_ == b.d_ || (a.p() == b.p() && a.nu() == b.nu());
  }

  static std::string poly_string(const std::vector<std::uint64_t>& coeffs, const std::string& var) {
    std::string out;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      const std::uint64_t c = coeffs[i];
      if (c == 0) continue;
      if (!out.empty()) out += " + ";
      std::string mono = i == 0 ? "" : i == 1 ? var : var + "^" + std::to_string(i);
      if (mono.empty()) {
        out += std::to_string(c);
      } else {
        out += c == 1 ? mono : std::to_string(c) + "*" + mono;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  static constexpr std::uint32_t kNoLog = 0xFFFFFFFFU;

  struct Data {
    std::uint64_t p = 2;
    unsigned nu = 1;
    std::uint64_t q = 2;
    std::uint64_t table_budget = kDefaultTableBudget;
    std::uint64_t order = 1;
    fp_poly::Poly modulus;
    Elem generator{1};
    std::vector<std::uint64_t> place;
    std::vector<std::uint32_t> exp;
    std::vector<std::uint32_t> log;
    std::vector<std::uint32_t> zech;
    std::vector<std::uint64_t> basis_trace;
    mutable std::once_flag log_once;
    std::atomic<bool> log_ready{false};
  };

  explicit Field(std::shared_ptr<Data> d) : d_(std::move(d)) {}

  static std::uint64_t smallest_primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    const auto factors = prime_factors(p - 1);
    for (std::uint64_t g = 2;; ++g) {
      bool primitive = true;
      for (auto r : factors) {
        if (pow_mod(g, (p - 1) / r, p) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) return g;
    }
  }

  static fp_poly::Poly index_to_poly(std::uint64_t index, std::uint64_t p, unsigned len) {
    fp_poly::Poly out(len);
    for (auto& c : out) {
      c = index % p;
      index /= p;
    }
    return out;
  }

  static fp_poly::Poly find_modulus(std::uint64_t p, unsigned nu) {
    for (std::uint64_t index = 0;; ++index) {
      fp_poly::Poly f = index_to_poly(index, p, nu);
      if (f[0] == 0) continue;
      f.push_back(1);
      if (fp_poly::is_irreducible(f, p)) return f;
    }
  }

  static Elem find_generator(const Data& d) {
    const std::uint64_t order = d.q - 1;
    const auto factors = prime_factors(order);
    for (std::uint64_t index = 1; index < d.q; ++index) {
      const fp_poly::Poly g = index_to_poly(index, d.p, d.nu);
      if (fp_poly::pow_rem(g, order, d.modulus, d.p) != fp_poly::Poly{1}) continue;
      bool primitive = true;
      for (auto r : factors) {
        if (fp_poly::pow_rem(g, order / r, d.modulus, d.p) == fp_poly::Poly{1}) {
          primitive = false;
          break;
        }
      }
      if (primitive) return Elem{static_cast<std::uint32_t>(index)};
    }
    throw DomainError("modulus is not irreducible: no element of order q-1");
  }

  static void build_tables(Data& d) {
    d.order = d.q - 1;
    d.exp.assign(d.order, 0);
    d.log.assign(d.q, kNoLog);
    const fp_poly::Poly g = index_to_poly(d.generator.v, d.p, d.nu);
    std::vector<std::uint64_t> cur(d.nu, 0);
    cur[0] = 1;
    std::vector<std::uint64_t> next(2 * d.nu, 0);
    for (std::uint64_t k = 0; k < d.order; ++k) {
      std::uint64_t idx = 0;
      for (unsigned i = 0; i < d.nu; ++i) idx += cur[i] * d.place[i];
      if (d.log[idx] != kNoLog) throw DomainError("generator order is smaller than q-1");
      d.exp[k] = static_cast<std::uint32_t>(idx);
      d.log[idx] = static_cast<std::uint32_t>(k);
      std::fill(next.begin(), next.end(), 0);
      for (unsigned i = 0; i < d.nu; ++i) {
        if (cur[i] == 0) continue;
        for (unsigned j = 0; j < d.nu; ++j) next[i + j] = (next[i + j] + cur[i] * g[j]) % d.p;
      }
      for (std::size_t i = 2 * d.nu - 1; i >= d.nu; --i) {
        const std::uint64_t c = next[i];
        if (c == 0) continue;
        next[i] = 0;
        for (unsigned j = 0; j < d.nu; ++j) {
          const std::size_t at = i - d.nu + j;
          next[at] = (next[at] + (d.p - c) * d.modulus[j]) % d.p;
        }
      }
      std::copy(next.begin(), next.begin() + d.nu, cur.begin());
    }
    d.zech.assign(d.order, kNoLog);
    for (std::uint64_t k = 0; k < d.order; ++k) {
      const std::uint64_t idx = d.exp[k];
      const std::uint64_t plus_one = idx % d.p == d.p - 1 ? idx - (d.p - 1) : idx + 1;
      if (plus_one != 0) d.zech[k] = d.log[plus_one];
    }
    d.log_ready = true;
  }

  void build_trace_basis() {
    auto& d = *d_;
    d.basis_trace.resize(d.nu);
    for (unsigned i = 0; i < d.nu; ++i) d.basis_trace[i] = trace_to_prime(Elem{static_cast<std::uint32_t>(d.place[i])});
  }

  void ensure_log_table() const {
    if (d_->log_ready) return;
    std::call_once(d_->log_once, [this] {
      auto& d = *d_;
      if (d.q > d.table_budget) throw BudgetError(static_cast<double>(d.q), static_cast<double>(d.table_budget));
      d.order = d.q - 1;
      d.exp.assign(d.order, 0);
      d.log.assign(d.q, kNoLog);
      std::uint64_t x = 1;
      for (std::uint64_t k = 0; k < d.order; ++k) {
        d.exp[k] = static_cast<std::uint32_t>(x);
        d.log[x] = static_cast<std::uint32_t>(k);
        x = x * d.generator.v % d.p;
      }
      d.log_ready = true;
    });
  }

  std::shared_ptr<Data> d_;
};

/// F_{Q^m} over F_Q for Q = p^k: embedding, restriction, relative trace and norm.
class FieldTower {
 public:
  FieldTower(const Field& base, unsigned degree, std::uint64_t table_budget = kDefaultTableBudget)
      : base_(base), top_(Field::make(base.p(), base.nu() * degree, table_budget)), degree_(degree) {
    embed_.resize(base.q());
    if (base.nu() == 1) {
      for (std::uint64_t c = 0; c < base.q(); ++c) embed_[c] = Elem{static_cast<std::uint32_t>(c)};
    } else {
      const Elem theta = find_root_of_base_modulus();
      std::vector<Elem> powers{top_.one()};
      for (unsigned i = 1; i < base.nu(); ++i) powers.push_back(top_.mul(powers.back(), theta));
      for (std::uint64_t idx = 0; idx < base.q(); ++idx) {
        const auto coeffs = base.coefficients(Elem{static_cast<std::uint32_t>(idx)});
        Elem acc = top_.zero();
        for (unsigned i = 0; i < base.nu(); ++i) acc = top_.add(acc, top_.mul(top_.from_int(static_cast<std::int64_t>(coeffs[i])), powers[i]));
        embed_[idx] = acc;
      }
    }
    for (std::uint64_t idx = 0; idx < base.q(); ++idx) restrict_.emplace(embed_[idx].v, Elem{static_cast<std::uint32_t>(idx)});
  }

  const Field& base() const noexcept { return base_; }
  const Field& top() const noexcept { return top_; }
  unsigned degree() const noexcept { return degree_; }

  Elem embed(Elem x) const { return embed_.at(x.v); }

  Elem restrict_to_base(Elem y) const {
    auto it = restrict_.find(y.v);
    if (it == restrict_.end()) throw DomainError("element does not lie in the base field");
    return it->second;
  }

  /// Sum of the conjugates y, y^Q, ..., y^{Q^{m-1}}, as a base-field element.
  Elem trace(Elem y) const {
    Elem acc = top_.zero();
    Elem conj = y;
    for (unsigned i = 0; i < degree_; ++i) {
      acc = top_.add(acc, conj);
      conj = top_.pow(conj, base_.q());
    }
    return restrict_to_base(acc);
  }

  /// Product of the conjugates, as a base-field element.
  Elem norm(Elem y) const {
    Elem acc = top_.one();
    Elem conj = y;
    for (unsigned i = 0; i < degree_; ++i) {
      acc = top_.mul(acc, conj);
      conj = top_.pow(conj, base_.q());
    }
    return restrict_to_base(acc);
  }

 private:
  Elem find_root_of_base_modulus() const {
    const auto& m = base_.modulus();
    for (std::uint64_t idx = 1; idx < top_.q(); ++idx) {
      const Elem t{static_cast<std::uint32_t>(idx)};
      Elem acc = top_.zero();
      for (std::size_t i = m.size(); i-- > 0;) acc = top_.add(top_.mul(acc, t), top_.from_int(static_cast<std::int64_t>(m[i])));
      if (acc.v == 0) return t;
    }
    throw DomainError("base modulus has no root in the extension");
  }

  Field base_;
  Field top_;
  unsigned degree_;
  std::vector<Elem> embed_;
  std::unordered_map<std::uint32_t, Elem> restrict_;
};

}  // namespace defsum
