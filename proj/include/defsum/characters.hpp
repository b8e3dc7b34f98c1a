#pragma once

#include "defsum/error.hpp"
#include "defsum/gf/field.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <vector>

namespace defsum {

using Complex = std::complex<double>;

/// e(k/n) = exp(2 pi i k / n), evaluated with the angle reduced to [0, 1).
inline Complex unit_root(std::uint64_t k, std::uint64_t n) {
  const long double turn = static_cast<long double>(k % n) / static_cast<long double>(n);
  const long double angle = 2.0L * std::numbers::pi_v<long double> * turn;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

namespace detail {

inline constexpr std::uint64_t kRootTableLimit = std::uint64_t{1} << 22;

/// e(k/n) for k in [0, n), or an empty table when n is too large to tabulate.
inline std::shared_ptr<const std::vector<Complex>> root_table(std::uint64_t n) {
  auto t = std::make_shared<std::vector<Complex>>();
  if (n <= kRootTableLimit) {
    t->resize(n);
    for (std::uint64_t k = 0; k < n; ++k) (*t)[k] = unit_root(k, n);
  }
  return t;
}

}  // namespace detail

/// psi_a(x) = e(Tr(a x) / p).
class AdditiveCharacter {
 public:
  AdditiveCharacter(Field field, Elem a) : field_(std::move(field)), a_(a), roots_(detail::root_table(field_.p())) {}

  /// Selector convention: 0 <= a < q picks the element with index a, a < 0
  /// picks the negative of the element with index -a.
  static AdditiveCharacter from_selector(const Field& field, std::int64_t a) {
    if (a >= 0) return AdditiveCharacter(field, field.element(static_cast<std::uint64_t>(a)));
    return AdditiveCharacter(field, field.neg(field.element(static_cast<std::uint64_t>(-a))));
  }

  const Field& field() const noexcept { return field_; }
  Elem a() const noexcept { return a_; }
  bool is_trivial() const noexcept { return a_.v == 0; }

  /// Tr(a x) as an integer in [0, p).
  std::uint32_t phase(Elem x) const noexcept { return field_.trace_linear(field_.mul(a_, x)); }

  /// e(t / p) for a trace value t.
  Complex of_phase(std::uint32_t t) const noexcept {
    return roots_->empty() ? unit_root(t, field_.p()) : (*roots_)[t];
  }

  Complex operator()(Elem x) const noexcept { return of_phase(phase(x)); }

 private:
  Field field_;
  Elem a_;
  std::shared_ptr<const std::vector<Complex>> roots_;
};

/// chi_m(g^k) = e(m k / (q - 1)) for the canonical generator g, extended by
/// chi(0) = 0 when m != 0 and chi(0) = 1 for the trivial character.
class MultiplicativeCharacter {
 public:
  MultiplicativeCharacter(Field field, std::int64_t m) : field_(std::move(field)) {
    const std::uint64_t n = field_.q() - 1;
    m_ = mod_reduce(m, n);
    const std::uint64_t g = std::gcd(m_, n);
    order_ = m_ == 0 ? 1 : n / g;
    step_ = m_ == 0 ? 0 : m_ / g;
    roots_ = detail::root_table(order_);
  }

  /// The quadratic character, m = (q - 1) / 2.
  static MultiplicativeCharacter legendre(const Field& field) {
    if (field.p() == 2) throw DomainError("no quadratic character in characteristic 2");
    return MultiplicativeCharacter(field, static_cast<std::int64_t>((field.q() - 1) / 2));
  }

  const Field& field() const noexcept { return field_; }
  std::uint64_t m() const noexcept { return m_; }
  bool is_trivial() const noexcept { return m_ == 0; }

  /// Smallest D >= 1 with chi^D trivial.
  std::uint64_t order() const noexcept { return order_; }

  /// chi(x) = e(j / D) with j returned here, for x != 0.
  std::uint64_t phase(Elem x) const {
    if (m_ == 0) return 0;
    const auto k = field_.dlog(x);
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(step_) * k % order_);
  }

  Complex of_phase(std::uint64_t j) const noexcept {
    return roots_->empty() ? unit_root(j, order_) : (*roots_)[j];
  }

  Complex operator()(Elem x) const {
    if (x.v == 0) return m_ == 0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    return of_phase(phase(x));
  }

 private:
  Field field_;
  std::uint64_t m_ = 0;
  std::uint64_t order_ = 1;
  std::uint64_t step_ = 0;
  std::shared_ptr<const std::vector<Complex>> roots_;
};

/// D = (q - 1) / gcd(m, q - 1).
inline std::uint64_t character_order(const MultiplicativeCharacter& chi) noexcept { return chi.order(); }

}  // namespace defsum
