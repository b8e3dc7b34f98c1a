#include "defsum/decomp.hpp"
#include "defsum/error.hpp"
#include "defsum/interpret.hpp"
#include "defsum/lab/corpus.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace defsum;

namespace {

// Witness tuples above x, listed one by one over F_q^k.
std::vector<std::vector<Elem>> witness_tuples(const ExistentialBlock& b, const Field& f, const std::vector<Elem>& x,
                                              const std::vector<Elem>& y) {
  std::map<std::string, Elem> env;
  for (std::size_t i = 0; i < x.size(); ++i) env[b.vars()[i]] = x[i];
  for (std::size_t i = 0; i < y.size(); ++i) env[b.params()[i]] = y[i];
  for (const auto& eq : b.equations()) {
    if (!interpret(Formula::atom(eq, Term{}), env, f)) return {};
  }
  const std::size_t k = b.witnesses().size();
  std::vector<std::vector<Elem>> out;
  std::vector<std::uint32_t> z(k, 0);
  const auto q = static_cast<std::uint32_t>(f.q());
  for (;;) {
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      env[b.witnesses()[j].var] = Elem{z[j]};
      ok = interpret(Formula::atom(b.witnesses()[j].h, Term{}), env, f);
    }
    if (ok) {
      std::vector<Elem> t;
      for (auto v : z) t.push_back(Elem{v});
      out.push_back(t);
    }
    std::size_t i = k;
    while (i > 0 && ++z[i - 1] == q) z[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

// Ordered j-tuples of pairwise distinct members of `items`, counted by listing them.
std::uint64_t ordered_distinct_tuples(std::size_t items, std::uint64_t j) {
  std::vector<bool> used(items, false);
  std::function<std::uint64_t(std::uint64_t)> go = [&](std::uint64_t left) -> std::uint64_t {
    if (left == 0) return 1;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < items; ++i) {
      if (used[i]) continue;
      used[i] = true;
      total += go(left - 1);
      used[i] = false;
    }
    return total;
  };
  return go(j);
}

std::vector<std::vector<Elem>> all_points(std::size_t n, const Field& f) {
  std::vector<std::vector<Elem>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Elem>> next;
    for (const auto& pt : out) {
      for (std::uint64_t v = 0; v < f.q(); ++v) {
        auto e = pt;
        e.push_back(f.element(v));
        next.push_back(e);
      }
    }
    out = std::move(next);
  }
  return out;
}

Rational beta(const std::vector<Elem>& x) {
  Rational r = 1;
  for (std::size_t i = 0; i < x.size(); ++i) r += Rational(x[i].v * (i + 2), 3);
  return r;
}

std::vector<Elem> params_of(const lab::NamedBlock& nb, const Field& f) {
  std::vector<Elem> y;
  for (auto v : nb.y) y.push_back(f.from_int(v));
  return y;
}

}  // namespace

TEST(Decomposition, FallingFactorial) {
  EXPECT_EQ(falling_factorial(5, 0), 1);
  EXPECT_EQ(falling_factorial(5, 2), 20);
  EXPECT_EQ(falling_factorial(4, 4), 24);
  EXPECT_THROW(falling_factorial(2, 3), DomainError);
}

TEST(Decomposition, InclusionExclusionRecoversTotals) {
  EXPECT_EQ(inclusion_exclusion_total(forward_triangular(std::vector<Rational>{3, 0, 0})), 3);
  EXPECT_EQ(inclusion_exclusion_total(forward_triangular(std::vector<Rational>{0, 2})), 2);
  EXPECT_EQ(forward_triangular(std::vector<Rational>{1, 1}), (std::vector<Rational>{3, 2}));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t e = 1 + rng() % 6;
    std::vector<Rational> x;
    Rational total = 0;
    for (std::size_t i = 0; i < e; ++i) {
      x.emplace_back(static_cast<long long>(rng() % 21) - 10, 1 + rng() % 5);
      total += x.back();
    }
    EXPECT_EQ(inclusion_exclusion_total(forward_triangular(x)), total);
  }
  EXPECT_THROW(inclusion_exclusion_total({}), DomainError);
}

TEST(Decomposition, FiberPowerSumsMatchTupleEnumeration) {
  for (const auto& nb : lab::block_corpus()) {
    for (std::uint64_t p : {5, 7, 13}) {
      const Field f = Field::prime(p);
      const auto y = params_of(nb, f);
      const auto data = fiber_multiplicities(nb.block, f, y);
      std::map<std::vector<Elem>, std::vector<std::vector<Elem>>> lists;
      std::uint64_t e = 0;
      for (const auto& x : all_points(nb.block.vars().size(), f)) {
        auto zs = witness_tuples(nb.block, f, x, y);
        e = std::max<std::uint64_t>(e, zs.size());
        if (!zs.empty()) lists[x] = std::move(zs);
      }
      ASSERT_EQ(data.fibers.size(), lists.size()) << nb.name << " p=" << p;
      EXPECT_EQ(data.e, e) << nb.name;
      for (std::uint64_t j = 1; j <= e; ++j) {
        Rational direct = 0;
        for (const auto& [x, zs] : lists) direct += Rational(ordered_distinct_tuples(zs.size(), j)) * beta(x);
        EXPECT_EQ(fiber_power_sum<Rational>(data, beta, j), direct) << nb.name << " p=" << p << " j=" << j;
      }
    }
  }
}

TEST(Decomposition, ReductionHoldsOnCorpus) {
  for (const auto& nb : lab::block_corpus()) {
    for (std::uint64_t p : {3, 5, 7, 11}) {
      const Field f = Field::prime(p);
      const auto r = verify_reduction<Rational>(nb.block, f, params_of(nb, f), beta);
      EXPECT_TRUE(r.equal) << nb.name << " p=" << p;
      EXPECT_EQ(r.lhs, r.rhs);
      const PointWeight<Complex> w = [](const std::vector<Elem>& x) {
        return Complex(1.0 + (x.empty() ? 0.0 : x[0].v), x.size() > 1 ? x[1].v : 0.5);
      };
      EXPECT_TRUE(verify_reduction<Complex>(nb.block, f, params_of(nb, f), w).equal) << nb.name;
    }
  }
}

TEST(Decomposition, ConicFibersOverF7) {
  const auto block = lab::make_block({"x"}, {}, {}, {{"z", "z^2 - x^2 - 1"}});
  const Field f7 = Field::prime(7);
  const auto data = fiber_multiplicities(block, f7);
  std::uint64_t ones = 0;
  std::uint64_t twos = 0;
  for (const auto& [x, m] : data.fibers) (m == 1 ? ones : twos) += 1;
  // x^2 + 1 = 0 has no root mod 7, so every fiber has two points.
  EXPECT_EQ(ones, 0u);
  EXPECT_EQ(twos, 3u);
  const PointWeight<Rational> unit = [](const std::vector<Elem>&) { return Rational(1); };
  EXPECT_EQ(fiber_power_sum<Rational>(data, unit, 1), 6);
  EXPECT_EQ(fiber_power_sum<Rational>(data, unit, 2), 6);
  EXPECT_EQ(verify_reduction<Rational>(block, f7, {}, unit).lhs, 3);
}

TEST(Decomposition, NoWitnesses) {
  const auto block = lab::make_block({"x"}, {}, {"x^2 - 1"}, {});
  const PointWeight<Rational> unit = [](const std::vector<Elem>&) { return Rational(1); };
  const auto r = verify_reduction<Rational>(block, Field::prime(11), {}, unit);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.lhs, 2);
  EXPECT_EQ(r.e, 1u);
}

TEST(Decomposition, BlockRejectsForeignWitnessVariables) {
  EXPECT_THROW(lab::make_block({"x"}, {}, {}, {{"z1", "z1^2 - x"}, {"z2", "z2 - z1"}}), ParseError);
  const auto v = Term::variable("z1") - Term::variable("z2");
  EXPECT_THROW(ExistentialBlock({"x"}, {}, {}, {Witness{"z1", Term::variable("z1")}, Witness{"z2", v}}), DomainError);
}
