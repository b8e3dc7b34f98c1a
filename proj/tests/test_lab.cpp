#include "defsum/error.hpp"
#include "defsum/lab/equidist.hpp"
#include "defsum/lab/interval.hpp"
#include "defsum/lab/kloosterman.hpp"
#include "defsum/lab/paper_examples.hpp"
#include "defsum/lab/report.hpp"
#include "defsum/parser.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

using namespace defsum;
using namespace defsum::lab;

namespace {

// Every cyclic window {a, a+1, ..., a+len-1} mod p, compared as sets.
bool window_oracle(const std::set<std::uint64_t>& s, std::uint64_t p) {
  if (s.empty()) return false;
  for (std::uint64_t a = 0; a < p; ++a) {
    std::set<std::uint64_t> w;
    for (std::uint64_t i = 0; i < s.size(); ++i) w.insert((a + i) % p);
    if (w == s) return true;
  }
  return false;
}

bool progression_oracle(const std::set<std::uint64_t>& s, std::uint64_t p, std::uint64_t step) {
  for (std::uint64_t a = 0; a < p; ++a) {
    std::set<std::uint64_t> w;
    for (std::uint64_t i = 0; i < s.size(); ++i) w.insert((a + i * step) % p);
    if (w == s) return true;
  }
  return false;
}

DefinableFormula squares() { return parse_definable("exists y. x = y^2", {"x"}); }

}  // namespace

TEST(Interval, MatchesWindowOracle) {
  std::mt19937_64 rng(11);
  for (std::uint64_t p = 2; p <= 100; ++p) {
    if (!is_prime(p)) continue;
    for (int trial = 0; trial < 40; ++trial) {
      std::set<std::uint64_t> s;
      const std::uint64_t len = rng() % (p + 1);
      const std::uint64_t start = rng() % p;
      const std::uint64_t step = trial % 3 == 0 ? 1 : 1 + rng() % (p - 1 == 0 ? 1 : p - 1);
      for (std::uint64_t i = 0; i < len; ++i) s.insert((start + i * step) % p);
      if (trial % 5 == 4 && !s.empty()) s.erase(s.begin());
      const auto v = is_interval(std::vector<std::uint64_t>(s.begin(), s.end()), p);
      EXPECT_EQ(v.is_interval, window_oracle(s, p)) << "p=" << p;
      if (v.is_interval) {
        std::set<std::uint64_t> rebuilt;
        for (auto i = v.a; i <= v.b; ++i) rebuilt.insert(static_cast<std::uint64_t>((i % static_cast<std::int64_t>(p) + p) % p));
        EXPECT_EQ(rebuilt, s);
        EXPECT_EQ(v.plain, v.a >= 0);
      }
      if (v.progression) {
        EXPECT_TRUE(progression_oracle(s, p, v.progression->step));
        for (std::uint64_t smaller = 1; smaller < v.progression->step; ++smaller) {
          EXPECT_FALSE(progression_oracle(s, p, smaller) || progression_oracle(s, p, p - smaller));
        }
      } else if (!s.empty()) {
        for (std::uint64_t st = 1; st < p; ++st) EXPECT_FALSE(progression_oracle(s, p, st));
      }
    }
  }
}

TEST(Interval, Examples) {
  const auto wrap = is_interval({5, 6, 0, 1}, 7);
  EXPECT_TRUE(wrap.is_interval);
  EXPECT_FALSE(wrap.plain);
  EXPECT_EQ(wrap.a, -2);
  EXPECT_EQ(wrap.b, 1);
  const auto plain = is_interval({2, 3, 4}, 11);
  EXPECT_TRUE(plain.plain);
  EXPECT_EQ(plain.a, 2);
  EXPECT_EQ(plain.b, 4);
  const auto evens = is_interval({0, 2, 4, 6}, 11);
  EXPECT_FALSE(evens.is_interval);
  ASSERT_TRUE(evens.progression);
  EXPECT_EQ(evens.progression->step, 2u);
  EXPECT_FALSE(is_interval({}, 5).is_interval);
  EXPECT_THROW(is_interval({1}, 9), DomainError);
  EXPECT_THROW(is_interval({9}, 7), DomainError);
}

TEST(Interval, GeometricMagnitude) {
  EXPECT_NEAR(interval_geometric_magnitude(2, 5), 2 * std::cos(std::numbers::pi / 5), 1e-12);
  EXPECT_EQ(interval_geometric_magnitude(7, 7), 0.0);
  EXPECT_NEAR(interval_geometric_magnitude(1, 13), 1.0, 1e-15);
  for (std::uint64_t n = 1; n < 17; ++n) {
    std::vector<std::uint64_t> xs;
    for (std::uint64_t i = 0; i < n; ++i) xs.push_back(i);
    EXPECT_NEAR(std::abs(weyl_sum(xs, 17)), interval_geometric_magnitude(n, 17), 1e-12);
  }
  EXPECT_THROW(interval_geometric_magnitude(0, 5), DomainError);
}

TEST(Interval, FormulaDefinesTheWindow) {
  const auto df = interval_formula(-2, 4);
  EXPECT_EQ(residues(df, Field::prime(7)), (std::vector<std::uint64_t>{0, 1, 5, 6}));
  const auto rep = interval_experiment(df, {7, 11, 13});
  EXPECT_EQ(rep.rows.size(), 3u);
  const auto sq = interval_experiment(squares(), {5, 7, 11, 13});
  EXPECT_EQ(sq.columns.size(), sq.rows.front().size());
}

TEST(Equidistribution, SquaresWeylSum) {
  const auto r = equidistribution(squares(), 101, 3);
  EXPECT_EQ(r.count, 51u);
  EXPECT_NEAR(std::abs(r.weyl[0]), (std::sqrt(101.0) + 1) / 2, 1e-9);
  EXPECT_LE(r.discrepancy, 1.0);
}

TEST(Equidistribution, FullLine) {
  const auto all = parse_definable("x = x", {"x"});
  const auto r = equidistribution(all, 13, 4);
  for (const auto& w : r.weyl) EXPECT_NEAR(std::abs(w), 0.0, 1e-12);
  EXPECT_NEAR(r.discrepancy, 1.0 / 13, 1e-12);
  EXPECT_THROW(equidistribution(all, 13, 0), DomainError);
  const auto rep = equidist_report(all, {5, 7}, 2);
  EXPECT_EQ(rep.rows.size(), 4u);
}

TEST(Kloosterman, SmallPrime) {
  const auto r = kloosterman_record(2, 5, KloostermanReading::ConstantA0, {1e8, 1, Strategy::Pruned});
  EXPECT_EQ(r.k_count, 4u);
  EXPECT_NEAR(r.k.real(), 2 + 2 * std::cos(4 * std::numbers::pi / 5), 1e-12);
  EXPECT_NEAR(r.k.imag(), 0.0, 1e-12);
  EXPECT_NEAR(r.k_star.real(), 0.190983, 1e-6);
  EXPECT_NEAR(r.k_star.imag(), 0.587785, 1e-6);
  EXPECT_EQ(r.k_star_count, 2u);
  EXPECT_EQ(r.irreducible_count, 2u);
  EXPECT_EQ(r.norm_one_degree_n, 4u);
  EXPECT_TRUE(r.identity);
}

TEST(Kloosterman, DirectSumOracle) {
  for (std::uint64_t p : {5, 7, 11}) {
    const auto r = kloosterman_record(2, p, KloostermanReading::ConstantA0, {1e8, 1, Strategy::Pruned});
    Complex k{};
    for (std::uint64_t a = 1; a < p; ++a) {
      std::uint64_t b = 1;
      while (a * b % p != 1) ++b;
      k += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>((a + b) % p) / static_cast<double>(p));
    }
    EXPECT_NEAR(std::abs(r.k - k), 0.0, 1e-9);
    EXPECT_LE(std::abs(r.k), 2 * std::sqrt(static_cast<double>(p)) + 1e-9);
    EXPECT_TRUE(r.identity);
  }
}

TEST(Kloosterman, ReadingsDiffer) {
  KloostermanConfig one;
  one.reading = KloostermanReading::ConstantOne;
  const auto a = kloosterman_experiment(2, {5, 7});
  const auto b = kloosterman_experiment(2, {5, 7}, one);
  EXPECT_NE(a.summary[0].first, b.summary[0].first);
  EXPECT_TRUE(a.passed());
  EXPECT_THROW(kloosterman_record(1, 5, KloostermanReading::ConstantA0, {}), DomainError);
}

TEST(Report, CsvAndChecks) {
  ExperimentReport r;
  r.name = "demo";
  r.columns = {"a", "b"};
  r.rows = {{"1", "x,y"}};
  r.add_check("ok", true);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.to_csv(), "a,b\n1,\"x,y\"\n");
  r.add_check("bad", false, "detail");
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(BuiltInExamples, BudgetZeroFailsFast) {
  PaperConfig cfg;
  cfg.budget = 0;
  EXPECT_THROW(run_paper_examples(cfg), BudgetError);
}

TEST(BuiltInExamples, QuickRunPasses) {
  PaperConfig cfg;
  cfg.quick = true;
  int seen = 0;
  const auto results = run_paper_examples(cfg, [&](const CriterionResult&) { ++seen; });
  EXPECT_EQ(seen, kCriterionCount);
  for (const auto& r : results) EXPECT_TRUE(r.pass) << r.id << " " << r.title << ": " << r.detail;
  EXPECT_TRUE(paper_examples_report(results).passed());
}
