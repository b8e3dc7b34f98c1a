#pragma once

#include "defsum/decomp.hpp"
#include "defsum/formula.hpp"
#include "defsum/irreducibility.hpp"
#include "defsum/parser.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace defsum::lab {

struct NamedBlock {
  std::string name;
  ExistentialBlock block;
  /// Parameter values (as integers mod p) used when checking the block.
  std::vector<std::int64_t> y;
};

inline ExistentialBlock make_block(const std::vector<std::string>& vars, const std::vector<std::string>& params,
                                   const std::vector<std::string>& equations,
                                   const std::vector<std::pair<std::string, std::string>>& witnesses) {
  std::vector<std::string> names = vars;
  names.insert(names.end(), params.begin(), params.end());
  std::vector<Term> eqs;
  for (const auto& e : equations) eqs.push_back(parse_term(e, names));
  std::vector<Witness> ws;
  for (const auto& [z, h] : witnesses) {
    auto scope = names;
    scope.push_back(z);
    ws.push_back(Witness{z, parse_term(h, scope)});
  }
  return ExistentialBlock(vars, params, std::move(eqs), std::move(ws));
}

/// Existential blocks used by the reduction checks.
inline std::vector<NamedBlock> block_corpus() {
  return {
      {"squares", make_block({"x"}, {}, {}, {{"z", "z^2 - x"}}), {}},
      {"conic", make_block({"x"}, {}, {}, {{"z", "z^2 - x^2 - 1"}}), {}},
      {"two square roots", make_block({"x"}, {}, {}, {{"z1", "z1^2 - x"}, {"z2", "z2^2 - x - 1"}}), {}},
      {"cubes", make_block({"x"}, {}, {}, {{"z", "z^3 - x"}}), {}},
      {"fourth powers", make_block({"x"}, {}, {}, {{"z", "z^4 - x"}}), {}},
      {"circle with square x", make_block({"x", "y"}, {}, {"x^2 + y^2 - 1"}, {{"z", "z^2 - x"}}), {}},
      {"square product", make_block({"x", "y"}, {}, {}, {{"z", "z^2 - x*y"}}), {}},
      {"both squares", make_block({"x", "y"}, {}, {}, {{"z1", "z1^2 - x"}, {"z2", "z2^2 - y"}}), {}},
      {"artin-schreier", make_block({"x"}, {}, {}, {{"z", "z^2 + z - x"}}), {}},
      {"pure equations", make_block({"x"}, {}, {"x^2 - 1"}, {}), {}},
      {"shifted squares", make_block({"x"}, {"t"}, {}, {{"z", "z^2 - x - t"}}), {1}},
      {"units", make_block({"x"}, {}, {}, {{"z", "x*z - 1"}}), {}},
  };
}

struct NamedFormula {
  std::string name;
  DefinableFormula phi;
};

/// Formulas exercising every connective, including implications and
/// equivalences.
inline std::vector<NamedFormula> formula_corpus() {
  return {
      {"squares", parse_definable("exists y. x = y^2", {"x"})},
      {"non-squares", parse_definable("!(exists y. x = y^2)", {"x"})},
      {"conic", parse_definable("exists y. x^2 + 1 = y^2", {"x"})},
      {"discriminant", parse_definable("forall x. x^2 + a*x + b != 0", {"a", "b"})},
      {"zero implies square", parse_definable("x = 0 -> exists y. x = y^2", {"x"})},
      {"square iff fourth power", parse_definable("(exists y. x = y^2) <-> (exists z. x = z^4)", {"x"})},
      {"inverse squares", parse_definable("forall y. (x*y = 1 -> y^2 = x)", {"x"})},
      {"graph equivalence", parse_definable("x^2 = y <-> (x = y | x + y = 0)", {"x", "y"})},
      {"mixed", parse_definable("!(x = 1 -> y = 2) | (x = y <-> y = x + 1)", {"x", "y"})},
      {"nested", parse_definable("exists u. (u != 0 & forall v. (v^2 = u -> v = x | v = -x))", {"x"})},
      {"irreducible quadratics", build_irreducibility_formula(2)},
  };
}

}  // namespace defsum::lab
