#include "defsum/characters.hpp"
#include "defsum/error.hpp"
#include "defsum/expsum.hpp"
#include "defsum/parser.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace defsum;

namespace {

DefinableFormula squares() { return parse_definable("exists y. x = y^2", {"x"}); }

SumSpec spec(DefinableFormula phi, const char* f, const char* g, std::int64_t psi, std::int64_t chi) {
  return SumSpec{phi, RationalMap(parse_term(f, phi.vars)), RationalMap(parse_term(g, phi.vars)), psi, chi};
}

bool is_square(std::uint64_t x, std::uint64_t p) {
  for (std::uint64_t t = 0; t < p; ++t) {
    if (t * t % p == x % p) return true;
  }
  return false;
}

}  // namespace

TEST(ExpSum, SquaresAdditive) {
  const auto r = sum(spec(squares(), "x", "1", 1, 0), Field::prime(5));
  EXPECT_EQ(r.count, 3u);
  EXPECT_NEAR(r.value.real(), 1 + 2 * std::cos(2 * std::numbers::pi / 5), 1e-12);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-12);
  EXPECT_NEAR(r.value.real(), (std::sqrt(5.0) + 1) / 2, 1e-12);
}

TEST(ExpSum, MatchesDirectSum) {
  for (std::uint64_t p : {7, 11, 13, 17}) {
    const Field f = Field::prime(p);
    for (std::int64_t a : {1, 2, -1}) {
      const auto r = sum(spec(squares(), "x^3 + x", "x + 1", a, 1), f);
      const auto psi = AdditiveCharacter::from_selector(f, a);
      const MultiplicativeCharacter chi(f, 1);
      Complex direct{};
      for (std::uint64_t x = 0; x < p; ++x) {
        if (!is_square(x, p)) continue;
        const Elem e{static_cast<std::uint32_t>(x)};
        direct += psi(f.from_int(static_cast<std::int64_t>((x * x * x + x) % p))) * chi(f.add(e, f.one()));
      }
      EXPECT_NEAR(std::abs(r.value - direct), 0.0, 1e-9) << p << " " << a;
      EXPECT_EQ(r.count, (p + 1) / 2);
    }
  }
}

TEST(ExpSum, FullSumVanishes) {
  const auto all = parse_definable("x = x", {"x"});
  EXPECT_NEAR(std::abs(sum(spec(all, "x", "1", 1, 0), Field::make(3, 2)).value), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(companion_sum(spec(all, "x", "1", 1, 0), Field::prime(3), 2).value), 0.0, 1e-12);
}

TEST(ExpSum, ConicLegendre) {
  const auto conic = parse_definable("exists y. x^2 + 1 = y^2", {"x"});
  const Field f7 = Field::prime(7);
  const auto r = sum(spec(conic, "0", "x^2 + 1", 0, 3), f7);
  double direct = 0;
  for (std::uint64_t x = 0; x < 7; ++x) {
    if (!is_square(x * x + 1, 7)) continue;
    direct += (x * x + 1) % 7 == 0 ? 0 : 1;
  }
  EXPECT_NEAR(r.value.real(), direct, 1e-12);
  EXPECT_NEAR(r.value.real(), 3.0, 1e-12);
}

TEST(ExpSum, ConjugationSymmetry) {
  const Field f = Field::prime(13);
  const auto a = sum(spec(squares(), "x^2 + 3*x", "1", 2, 0), f);
  const auto b = sum(spec(squares(), "x^2 + 3*x", "1", -2, 0), f);
  EXPECT_NEAR(std::abs(a.value - std::conj(b.value)), 0.0, 1e-12);
}

TEST(ExpSum, PolesAreSkipped) {
  const auto all = parse_definable("x = x", {"x"});
  const SumSpec s{all, RationalMap(parse_term("1", {"x"}), parse_term("x", {"x"})), RationalMap(Term::constant(1)), 0, 0};
  const auto r = sum(s, Field::prime(11));
  EXPECT_EQ(r.count, 10u);
  EXPECT_EQ(r.pole_count, 1u);
  EXPECT_NEAR(r.value.real(), 10.0, 1e-12);
  EXPECT_THROW(RationalMap(Term::constant(1), Term{}), DomainError);
}

TEST(ExpSum, CompanionMatchesDirectExtensionSum) {
  const auto sq = squares();
  for (auto [p, nu] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {5, 2}, {3, 3}, {2, 4}}) {
    const Field base = Field::prime(p);
    const Field top = Field::make(p, nu);
    const auto r = companion_sum(spec(sq, "x", "1", 1, 0), base, nu);
    const auto psi = AdditiveCharacter::from_selector(base, 1);
    Complex direct{};
    std::vector<bool> square(top.q(), false);
    for (std::uint64_t i = 0; i < top.q(); ++i) square[top.mul(top.element(i), top.element(i)).v] = true;
    for (std::uint64_t i = 0; i < top.q(); ++i) {
      if (square[i]) direct += psi(Elem{top.trace_to_prime(top.element(i))});
    }
    EXPECT_NEAR(std::abs(r.value - direct), 0.0, 1e-9) << p << "^" << nu;
    EXPECT_EQ(r.q, top.q());
  }
}

TEST(ExpSum, CompanionDegreeOneIsPlainSum) {
  const auto s = spec(squares(), "x^2", "x", 1, 2);
  const Field f = Field::prime(13);
  EXPECT_NEAR(std::abs(companion_sum(s, f, 1).value - sum(s, f).value), 0.0, 1e-15);
  EXPECT_THROW(companion_sum(s, f, 0), DomainError);
}

TEST(ExpSum, TwistOfSquares) {
  const auto r = twist_scan(spec(squares(), "0", "1", 1, 0), Field::prime(7), 3.0);
  ASSERT_EQ(r.magnitudes.size(), 7u);
  EXPECT_NEAR(r.magnitudes[0], 4.0, 1e-12);
  EXPECT_NEAR(r.magnitudes[1], std::sqrt(2.0), 1e-12);
  EXPECT_EQ(r.scanned, 7u);
}

TEST(ExpSum, TwistExceptionsAtLargePrime) {
  const auto r = twist_scan(spec(squares(), "0", "1", 1, 0), Field::prime(23), 1.0);
  ASSERT_EQ(r.exceptions.size(), 1u);
  EXPECT_EQ(r.exceptions[0], std::vector<std::uint32_t>{0});
}

TEST(ExpSum, LevelSets) {
  const auto all = parse_definable("x = x", {"x"});
  EXPECT_NEAR(max_level_set_fraction(spec(all, "x^2", "1", 1, 0), Field::prime(11)), 2.0 / 11, 1e-12);
  EXPECT_NEAR(max_level_set_fraction(spec(all, "x", "1", 1, 0), Field::prime(11)), 1.0 / 11, 1e-12);
}
