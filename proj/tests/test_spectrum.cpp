#include "defsum/density.hpp"
#include "defsum/error.hpp"
#include "defsum/formula.hpp"
#include "defsum/parser.hpp"
#include "defsum/spectrum.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace defsum;

namespace {

// Affine points of y^2 = x^3 - x over F_{p^nu}, via a table of square roots.
BigInt curve_points(std::uint64_t p, unsigned nu) {
  const Field f = Field::make(p, nu);
  std::vector<std::uint64_t> roots(f.q(), 0);
  for (std::uint64_t i = 0; i < f.q(); ++i) ++roots[f.mul(f.element(i), f.element(i)).v];
  std::uint64_t n = 0;
  for (std::uint64_t i = 0; i < f.q(); ++i) {
    const Elem x = f.element(i);
    n += roots[f.sub(f.mul(x, f.mul(x, x)), x).v];
  }
  return BigInt(n);
}

std::vector<Rational> as_rational(const std::vector<BigInt>& s) {
  std::vector<Rational> out;
  for (const auto& v : s) out.emplace_back(v);
  return out;
}

}  // namespace

TEST(Recurrence, GeometricSequence) {
  const std::vector<BigInt> s{5, 25, 125, 625};
  const auto rec = min_recurrence(s);
  EXPECT_EQ(rec.poly, (std::vector<Rational>{-5, 1}));
  EXPECT_EQ(predict_next(as_rational(s), rec), 3125);
}

TEST(Recurrence, ZeroAndFibonacci) {
  EXPECT_EQ(min_recurrence(std::vector<BigInt>{0, 0, 0, 0}).order(), 0u);
  const std::vector<BigInt> fib{1, 1, 2, 3, 5, 8, 13};
  const auto rec = min_recurrence(fib);
  EXPECT_EQ(rec.poly, (std::vector<Rational>{-1, -1, 1}));
  EXPECT_TRUE(annihilates(rec, as_rational(fib)));
  EXPECT_FALSE(annihilates(Recurrence{{-2, 1}}, as_rational(fib)));
}

TEST(Recurrence, UnderdeterminedSequenceThrows) {
  EXPECT_THROW(min_recurrence(std::vector<BigInt>{0, 0, 0, 1}), SequenceError);
  EXPECT_THROW(predict_next({1}, Recurrence{{-1, -1, 1}}), SequenceError);
}

TEST(Recurrence, NumericFitMatchesExact) {
  std::vector<std::complex<double>> s;
  for (int n = 1; n <= 8; ++n) s.emplace_back(std::pow(3.0, n) - std::pow(-2.0, n));
  const auto r = fit_recurrence_numeric(s);
  ASSERT_EQ(r.order(), 2u);
  EXPECT_NEAR(std::abs(r.poly[0] - std::complex<double>(-6, 0)), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(r.poly[1] - std::complex<double>(-1, 0)), 0.0, 1e-6);
}

TEST(Spectrum, CurvePointCounts) {
  std::vector<BigInt> counts;
  for (unsigned nu = 1; nu <= 6; ++nu) counts.push_back(curve_points(5, nu));
  const auto rec = min_recurrence(counts);
  ASSERT_EQ(rec.order(), 3u);
  const auto spec = classify_weights(rec, 5);
  std::vector<int> weights;
  for (const auto& r : spec.roots) {
    EXPECT_TRUE(r.classified);
    weights.push_back(r.weight);
  }
  EXPECT_EQ(weights, (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(spec.max_weight, 2);
  const auto z = zeta_series(as_rational(counts), rec, 5);
  EXPECT_EQ(z.denominator, (std::vector<Rational>{1, -5}));
  ASSERT_EQ(z.numerator.size(), 3u);
  EXPECT_EQ(z.numerator[0], 1);
  EXPECT_EQ(z.numerator[2], 5);
  // Frobenius trace: N_1 = q - (alpha + beta), numerator = 1 - (alpha + beta) T + q T^2.
  EXPECT_EQ(z.numerator[1], Rational(BigInt(counts[0]) - 5));
}

TEST(Spectrum, AffineLine) {
  std::vector<Rational> s;
  for (int n = 1; n <= 4; ++n) s.emplace_back(static_cast<long long>(std::pow(7, n)));
  const auto rec = min_recurrence(s);
  const auto z = zeta_series(s, rec, 7);
  EXPECT_EQ(z.numerator, std::vector<Rational>{1});
  EXPECT_EQ(z.denominator, (std::vector<Rational>{1, -7}));
}

TEST(Spectrum, ClassifyRejectsSmallQ) {
  EXPECT_THROW(classify_weights(Recurrence{{-5, 1}}, 1), DomainError);
  const auto spec = classify_weights(Recurrence{{-3, 1}}, 5);
  ASSERT_EQ(spec.roots.size(), 1u);
  EXPECT_FALSE(spec.roots[0].classified);
  EXPECT_FALSE(spec.warnings.empty());
}

TEST(Spectrum, ZetaRequiresAnnihilation) {
  EXPECT_THROW(zeta_series({5, 25, 126}, Recurrence{{-5, 1}}, 5), SequenceError);
}

TEST(Density, SimplestRational) {
  EXPECT_EQ(*simplest_rational_near(0.49, 0.05), Rational(1, 2));
  EXPECT_EQ(*simplest_rational_near(0.34, 0.01), Rational(1, 3));
  EXPECT_EQ(*simplest_rational_near(2.9, 0.2), Rational(3));
  EXPECT_FALSE(simplest_rational_near(0.001, 0.0001, 8).has_value());
}

TEST(Density, SquaresAreHalfTheLine) {
  const auto sq = parse_definable("exists y. x = y^2", {"x"});
  const auto r = density_fit(sq, {5, 7, 11, 13, 17, 19, 23, 29, 31, 37});
  ASSERT_EQ(r.clusters.size(), 1u);
  EXPECT_EQ(r.clusters[0].delta, 1);
  EXPECT_EQ(r.clusters[0].mu, Rational(1, 2));
  EXPECT_FALSE(r.clusters[0].tentative());
  EXPECT_TRUE(r.unclustered.empty());
  EXPECT_TRUE(std::is_sorted(r.records.begin(), r.records.end(), [](auto& a, auto& b) { return a.p < b.p; }));
  for (const auto& rec : r.records) EXPECT_LE(rec.normalized_error, kClusterWindow);
}

TEST(Density, EmptySetIsTheSentinel) {
  const DefinableFormula none{Formula::falsity(), {"x"}, {}};
  const auto r = density_fit(none, {5, 7, 11});
  ASSERT_EQ(r.clusters.size(), 1u);
  EXPECT_EQ(r.clusters[0].delta, 0);
  EXPECT_EQ(r.clusters[0].mu, 0);
  EXPECT_EQ(r.clusters[0].support.size(), 3u);
}

TEST(Density, RootlessQuadratics) {
  const auto df = parse_definable("forall x. x^2 + a*x + b != 0", {"a", "b"});
  const auto r = density_fit(df, {5, 7, 11, 13, 17}, {}, {1e8, 1, Strategy::Pruned});
  ASSERT_EQ(r.clusters.size(), 1u);
  EXPECT_EQ(r.clusters[0].delta, 2);
  EXPECT_EQ(r.clusters[0].mu, Rational(1, 2));
}

TEST(Density, TwoClustersByResidueClass) {
  // p + 1 points for p = 1 mod 4 and 2p points otherwise.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;
  for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) samples.emplace_back(p, p % 4 == 1 ? p + 1 : 2 * p);
  const auto r = cluster_counts(samples);
  ASSERT_EQ(r.clusters.size(), 2u);
  std::vector<Rational> mus{r.clusters[0].mu, r.clusters[1].mu};
  std::sort(mus.begin(), mus.end());
  EXPECT_EQ(mus, (std::vector<Rational>{1, 2}));
  for (const auto& c : r.clusters) EXPECT_EQ(c.delta, 1);
}
