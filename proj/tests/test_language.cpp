#include "defsum/desugar.hpp"
#include "defsum/error.hpp"
#include "defsum/formula.hpp"
#include "defsum/gf/field.hpp"
#include "defsum/interpret.hpp"
#include "defsum/irreducibility.hpp"
#include "defsum/parser.hpp"
#include "defsum/substitute.hpp"
#include "defsum/term.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace defsum;

namespace {

Term var(const char* n) { return Term::variable(n); }
Term cst(long long c) { return Term::constant(c); }

}  // namespace

TEST(Term, ArithmeticNormalizes) {
  const Term x = var("x");
  const Term y = var("y");
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
  EXPECT_EQ((x + cst(1)).pow(2), x * x + cst(2) * x + cst(1));
  EXPECT_EQ(((x + y) - y).variables(), std::vector<std::string>{"x"});
  EXPECT_EQ((cst(3) * x * x * y).total_degree(), 3u);
  EXPECT_EQ((x * x * y + y).degree_in("x"), 2u);
  EXPECT_EQ((cst(4) * x * x * y + y + cst(7)).coefficient_of("x", 2), cst(4) * y);
  EXPECT_EQ((x * y + cst(5)).constant_term(), 5);
}

TEST(Term, Printing) {
  EXPECT_EQ(to_string(cst(3) * var("x").pow(2) * var("y") - var("y") + cst(7)), "3*x^2*y - y + 7");
  EXPECT_EQ(to_string(Term{}), "0");
  EXPECT_EQ(to_string(-var("x")), "-x");
}

TEST(Parser, AtomsAndPrecedence) {
  const auto f = parse_formula("x = 0 | y = 1 & x != y", {"x", "y"});
  ASSERT_EQ(f.kind(), FormulaKind::Or);
  EXPECT_EQ(f.children()[1].kind(), FormulaKind::And);
  const auto g = parse_formula("x = 0 -> y = 0 -> x = y", {"x", "y"});
  ASSERT_EQ(g.kind(), FormulaKind::Implies);
  EXPECT_EQ(g.children()[1].kind(), FormulaKind::Implies);
}

TEST(Parser, UnicodeAliases) {
  const auto ascii = parse_formula("exists y. !(x = y^2) & x != 0", {"x"});
  const auto uni = parse_formula("∃y. ¬(x = y^2) ∧ x ≠ 0", {"x"});
  EXPECT_EQ(ascii, uni);
}

TEST(Parser, ParenthesizedTermsAndFormulas) {
  const auto a = parse_formula("(x + 1)*(x - 1) = 0", {"x"});
  EXPECT_EQ(a.kind(), FormulaKind::Atom);
  const auto b = parse_formula("(x = 0 | x = 1) & (x + 1) = 1", {"x"});
  EXPECT_EQ(b.kind(), FormulaKind::And);
}

TEST(Parser, PrintRoundTrip) {
  const std::vector<std::string> texts{
      "exists y. x = y^2",
      "forall x. x^2 + a*x + b != 0",
      "!(x = 1 -> y = 2) | (x = y <-> y = x + 1)",
      "(x = 0 -> y = 0) -> x = y",
      "x = 0 & (exists y. y^2 = x + 1)",
  };
  for (const auto& t : texts) {
    std::vector<std::string> vars;
    const auto df = parse_formula_inferring(t);
    const auto printed = to_string(df.formula);
    const auto again = parse_formula(printed, df.vars, df.params);
    EXPECT_EQ(again, df.formula) << t << " printed as " << printed;
  }
}

TEST(Parser, Errors) {
  EXPECT_THROW(parse_formula("x = z", {"x"}), ParseError);
  EXPECT_THROW(parse_formula("exists x. x = 0", {"x"}), ParseError);
  EXPECT_THROW(parse_formula("exists y. exists y. y = 0", {}), ParseError);
  EXPECT_THROW(parse_formula("x = 0", {"x", "x"}), ParseError);
  EXPECT_THROW(parse_formula("x = ", {"x"}), ParseError);
  EXPECT_THROW(parse_formula("x + 1", {"x"}), ParseError);
  EXPECT_THROW(parse_formula("x = 1 @ 2", {"x"}), ParseError);
  try {
    parse_formula("x = 0 &\n  y = 1", {"x"});
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("unbound variable 'y'"), std::string::npos);
  }
}

TEST(Parser, InferringCollectsFreeNames) {
  std::vector<std::string> warnings;
  const auto df = parse_formula_inferring("exists y. x = y^2 + t", &warnings);
  EXPECT_EQ(df.formula.free_names(), (std::set<std::string>{"t", "x"}));
}

TEST(Formula, ConstructorsFlatten) {
  const auto a = Formula::atom(var("x"), cst(0));
  const auto b = Formula::atom(var("x"), cst(1));
  const auto c = Formula::conjunction({a, Formula::conjunction({b, a})});
  EXPECT_EQ(c.children().size(), 3u);
  EXPECT_EQ(Formula::conjunction({}), Formula::truth());
  EXPECT_EQ(Formula::disjunction({}), Formula::falsity());
  EXPECT_EQ(Formula::conjunction({a}), a);
  EXPECT_EQ(Formula::exists("y", Formula::forall("z", a)).quantifier_depth(), 2u);
}

TEST(Desugar, RemovesImplicationsAndEquivalences) {
  const auto f = parse_formula("(x = 0 -> y = 0) <-> !(x = y)", {"x", "y"});
  const auto d = desugar(f);
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    EXPECT_NE(g.kind(), FormulaKind::Implies);
    EXPECT_NE(g.kind(), FormulaKind::Iff);
    for (const auto& c : g.children()) walk(c);
  };
  walk(d);
  const Field f5 = Field::prime(5);
  for (std::uint32_t x = 0; x < 5; ++x) {
    for (std::uint32_t y = 0; y < 5; ++y) {
      const std::map<std::string, Elem> env{{"x", Elem{x}}, {"y", Elem{y}}};
      const bool direct = ((x != 0) || (y == 0)) == (x != y);
      EXPECT_EQ(interpret(f, env, f5), direct);
      EXPECT_EQ(interpret(d, env, f5), direct);
    }
  }
}

TEST(Substitute, ReplacesFreeOccurrencesOnly) {
  const auto f = Formula::conjunction(
      {Formula::atom(var("x"), var("t")), Formula::exists("t", Formula::atom(var("t"), var("x").pow(2)))});
  const auto g = substitute(f, "t", cst(3));
  EXPECT_EQ(to_string(g), "x = 3 & (exists t. t = x^2)");
  EXPECT_THROW(substitute(parse_formula("exists y. x = y", {"x"}), "x", var("y")), DomainError);
  EXPECT_EQ(substitute(var("x") * var("x") + var("y"), "x", var("y") + cst(1)),
            var("y") * var("y") + cst(3) * var("y") + cst(1));
}

TEST(Irreducibility, MatchesDirectRootTestForQuadratics) {
  const auto df = build_irreducibility_formula(2);
  EXPECT_EQ(df.vars, (std::vector<std::string>{"a0", "a1"}));
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const Field f = Field::prime(p);
    for (std::uint32_t a0 = 0; a0 < p; ++a0) {
      for (std::uint32_t a1 = 0; a1 < p; ++a1) {
        bool has_root = false;
        for (std::uint64_t t = 0; t < p; ++t) has_root = has_root || (t * t + a1 * t + a0) % p == 0;
        const std::map<std::string, Elem> env{{"a0", Elem{a0}}, {"a1", Elem{a1}}};
        EXPECT_EQ(interpret(df.formula, env, f), !has_root) << p << " " << a0 << " " << a1;
      }
    }
  }
}

TEST(Irreducibility, RejectsBadDegrees) {
  EXPECT_THROW(build_irreducibility_formula(1), DomainError);
  EXPECT_THROW(build_irreducibility_formula(7), DomainError);
  const auto nm = build_irreducibility_formula(2, false);
  EXPECT_EQ(nm.vars.size(), 3u);
}
