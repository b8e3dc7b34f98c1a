#include "defsum/defset.hpp"
#include "defsum/error.hpp"
#include "defsum/interpret.hpp"
#include "defsum/irreducibility.hpp"
#include "defsum/parser.hpp"

#include <gtest/gtest.h>

#include <map>
#include <string>
#include <vector>

using namespace defsum;

namespace {

DefinableFormula squares() { return parse_definable("exists y. x = y^2", {"x"}); }

// Every point of F_p^n, tested by the direct recursive semantics.
std::vector<std::vector<Elem>> brute_points(const DefinableFormula& df, const Field& f, const std::vector<Elem>& y = {}) {
  const std::size_t n = df.vars.size();
  std::vector<std::vector<Elem>> out;
  std::vector<std::uint32_t> idx(n, 0);
  const auto q = static_cast<std::uint32_t>(f.q());
  for (;;) {
    std::map<std::string, Elem> env;
    std::vector<Elem> pt;
    for (std::size_t i = 0; i < n; ++i) {
      env[df.vars[i]] = Elem{idx[i]};
      pt.push_back(Elem{idx[i]});
    }
    for (std::size_t i = 0; i < df.params.size(); ++i) env[df.params[i]] = y[i];
    if (interpret(df.formula, env, f)) out.push_back(pt);
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == q) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace

TEST(DefinableSet, SquaresCount) {
  EXPECT_EQ(count(squares(), Field::prime(5)), 3u);
  EXPECT_EQ(count(squares(), Field::prime(7)), 4u);
  EXPECT_EQ(count(squares(), Field::prime(2)), 2u);
  EXPECT_EQ(count(squares(), Field::make(5, 2)), 13u);
  for (std::uint64_t p : {3, 11, 13, 101}) EXPECT_EQ(count(squares(), Field::prime(p)), (p + 1) / 2);
}

TEST(DefinableSet, SquaresEnumerated) {
  const auto r = enumerate_set(squares(), Field::prime(7));
  std::vector<std::uint32_t> xs;
  for (const auto& pt : r.points) xs.push_back(pt[0].v);
  EXPECT_EQ(xs, (std::vector<std::uint32_t>{0, 1, 2, 4}));
}

TEST(DefinableSet, NoRootQuadratics) {
  const auto df = parse_definable("forall x. x^2 + a*x + b != 0", {"a", "b"});
  EXPECT_EQ(count(df, Field::prime(5)), 10u);
  for (std::uint64_t p : {3, 7, 11}) EXPECT_EQ(count(df, Field::prime(p)), p * (p - 1) / 2);
}

TEST(DefinableSet, ProductOneIrreducibles) {
  auto irr = build_irreducibility_formula(2);
  const auto df = DefinableFormula{Formula::conjunction({parse_formula("a0*a1 = 1", {"a0", "a1"}), irr.formula}),
                                   {"a0", "a1"}, {}};
  const auto pts = brute_points(df, Field::prime(5));
  EXPECT_EQ(pts.size(), 2u);
  EXPECT_EQ(count(df, Field::prime(5)), 2u);
  EXPECT_EQ(count(df, Field::prime(5), {}, {1e8, 1, Strategy::Pruned}), 2u);
}

TEST(DefinableSet, Satisfies) {
  const Field f7 = Field::prime(7);
  EXPECT_TRUE(satisfies(squares(), f7, std::vector<Elem>{Elem{2}}, {}));
  EXPECT_FALSE(satisfies(squares(), f7, std::vector<Elem>{Elem{3}}, {}));
  const auto shifted = parse_definable("exists y. x + t = y^2", {"x"}, {"t"});
  EXPECT_TRUE(satisfies(shifted, f7, std::map<std::string, Elem>{{"x", Elem{1}}, {"t", Elem{1}}}));
  EXPECT_FALSE(satisfies(shifted, f7, std::map<std::string, Elem>{{"x", Elem{2}}, {"t", Elem{1}}}));
  EXPECT_THROW(satisfies(shifted, f7, std::map<std::string, Elem>{{"x", Elem{1}}}), DomainError);
  EXPECT_THROW(satisfies(squares(), f7, std::vector<Elem>{}, {}), DomainError);
}

TEST(DefinableSet, AgreesWithDirectSemantics) {
  const std::vector<DefinableFormula> corpus{
      squares(),
      parse_definable("exists y. x^2 + 1 = y^2", {"x"}),
      parse_definable("forall y. x != y^3 | x = 0", {"x"}),
      parse_definable("x*y = 1 -> (exists z. z^2 = x)", {"x", "y"}),
      parse_definable("(exists u. x = u^2) <-> (exists v. y = v^2)", {"x", "y"}),
      parse_definable("exists u. exists v. x = u^2 + v^2 & u != v", {"x"}),
      parse_definable("forall a. exists b. a*b = x | a = 0", {"x"}),
      parse_definable("!(x = y) & x^2 = y^2", {"x", "y"}),
  };
  for (const auto& df : corpus) {
    for (auto [p, nu] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}}) {
      const Field f = Field::make(p, nu);
      const auto expect = brute_points(df, f);
      const auto brute = enumerate_set(df, f, {}, {1e8, 1, Strategy::Brute});
      const auto pruned = enumerate_set(df, f, {}, {1e8, 1, Strategy::Pruned});
      EXPECT_EQ(brute.points, expect) << to_string(df.formula) << " q=" << f.q();
      EXPECT_EQ(pruned.points, expect) << to_string(df.formula) << " q=" << f.q();
    }
  }
}

TEST(DefinableSet, ComplementAndMonotonicity) {
  const auto a = squares();
  const DefinableFormula not_a{Formula::negation(a.formula), a.vars, {}};
  const auto b = parse_definable("exists y. x = y^4", {"x"});
  for (std::uint64_t p : {5, 7, 13, 17}) {
    const Field f = Field::prime(p);
    EXPECT_EQ(count(a, f) + count(not_a, f), p);
    const auto sub = enumerate_set(b, f).points;
    for (const auto& pt : sub) EXPECT_TRUE(satisfies(a, f, pt, {}));
    EXPECT_LE(sub.size(), count(a, f));
  }
}

TEST(DefinableSet, Parameters) {
  const auto df = parse_definable("exists y. x + t = y^2", {"x"}, {"t"});
  const Field f = Field::prime(11);
  for (std::uint32_t t = 0; t < 11; ++t) {
    EXPECT_EQ(count(df, f, {Elem{t}}), 6u);
    EXPECT_EQ(enumerate_set(df, f, {Elem{t}}).points, brute_points(df, f, {Elem{t}}));
  }
  EXPECT_THROW(count(df, f), DomainError);
}

TEST(DefinableSet, Budget) {
  const auto df = parse_definable("exists u. exists v. x = u^2 + v^2", {"x", "y"});
  EXPECT_THROW(count(df, Field::prime(101), {}, {1e3}), BudgetError);
  try {
    count(df, Field::prime(101), {}, {1e3});
  } catch (const BudgetError& e) {
    EXPECT_GT(e.estimate(), 1e3);
    EXPECT_EQ(e.budget(), 1e3);
  }
  const CompiledFormula cf(df, Field::prime(101), Strategy::Brute);
  EXPECT_GE(cf.cost(), 101.0 * 101.0 * 101.0 * 101.0);
  const CompiledFormula pruned(df, Field::prime(101), Strategy::Pruned);
  EXPECT_LE(pruned.cost(), cf.cost());
}

TEST(DefinableSet, ParallelIsDeterministic) {
  const auto df = parse_definable("exists y. x^3 + y^2 = z", {"x", "z"});
  const Field f = Field::prime(31);
  const auto one = enumerate_set(df, f, {}, {1e8, 1});
  for (unsigned w : {2u, 3u, 8u}) {
    EXPECT_EQ(enumerate_set(df, f, {}, {1e8, w}).points, one.points);
    EXPECT_EQ(count(df, f, {}, {1e8, w}), one.points.size());
  }
}

TEST(DefinableSet, ZeroVariables) {
  const auto yes = parse_definable("exists y. y^2 = 2", {});
  EXPECT_EQ(count(yes, Field::prime(7)), 1u);
  EXPECT_EQ(count(yes, Field::prime(5)), 0u);
}
