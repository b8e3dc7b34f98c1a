#pragma once

#include "defsum/term.hpp"

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace defsum {

enum class FormulaKind { Atom, Not, And, Or, Implies, Iff, Exists, Forall };

/// First-order formula over the language of rings.
///
/// Nodes are immutable and shared, so copies are cheap and safe to hand to
/// concurrent evaluators. Conjunctions and disjunctions are kept flat: the
/// builders splice nested And/Or children into their parent.
class Formula {
 public:
  static Formula atom(Term lhs, Term rhs) {
    auto n = std::make_shared<Node>();
    n->kind = FormulaKind::Atom;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return Formula(std::move(n));
  }

  static Formula truth() { return atom(Term{}, Term{}); }
  static Formula falsity() { return atom(Term::constant(1), Term{}); }

  static Formula negation(Formula child) { return unary(FormulaKind::Not, "", std::move(child)); }

  static Formula conjunction(std::vector<Formula> children) {
    return nary(FormulaKind::And, std::move(children), truth());
  }

  static Formula disjunction(std::vector<Formula> children) {
    return nary(FormulaKind::Or, std::move(children), falsity());
  }

  static Formula implies(Formula a, Formula b) { return binary(FormulaKind::Implies, std::move(a), std::move(b)); }
  static Formula iff(Formula a, Formula b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }

  static Formula exists(std::string var, Formula body) {
    return unary(FormulaKind::Exists, std::move(var), std::move(body));
  }

  static Formula forall(std::string var, Formula body) {
    return unary(FormulaKind::Forall, std::move(var), std::move(body));
  }

  FormulaKind kind() const noexcept { return node_->kind; }
  const Term& lhs() const noexcept { return node_->lhs; }
  const Term& rhs() const noexcept { return node_->rhs; }
  const std::vector<Formula>& children() const noexcept { return node_->children; }
  const Formula& child() const { return node_->children.front(); }
  const std::string& var() const noexcept { return node_->var; }

  bool is_quantifier() const noexcept {
    return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
  }

  /// Number of nodes in the tree.
  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.size();
    return n;
  }

  std::size_t quantifier_depth() const {
    std::size_t d = 0;
    for (const auto& c : children()) d = std::max(d, c.quantifier_depth());
    return d + (is_quantifier() ? 1 : 0);
  }

  /// Names occurring in atoms that no enclosing quantifier binds.
  std::set<std::string> free_names() const {
    std::set<std::string> out;
    collect_free(*this, {}, out);
    return out;
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.var() != b.var()) return false;
    if (a.kind() == FormulaKind::Atom) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    return a.children() == b.children();
  }

 private:
  struct Node {
    FormulaKind kind = FormulaKind::Atom;
    Term lhs;
    Term rhs;
    std::vector<Formula> children;
    std::string var;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula unary(FormulaKind kind, std::string var, Formula child) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->var = std::move(var);
    n->children.push_back(std::move(child));
    return Formula(std::move(n));
  }

  static Formula binary(FormulaKind kind, Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children.push_back(std::move(a));
    n->children.push_back(std::move(b));
    return Formula(std::move(n));
  }

  static Formula nary(FormulaKind kind, std::vector<Formula> children, Formula empty) {
    std::vector<Formula> flat;
    for (auto& c : children) {
      if (c.kind() == kind) {
        flat.insert(flat.end(), c.children().begin(), c.children().end());
      } else {
        flat.push_back(std::move(c));
      }
    }
    if (flat.empty()) return empty;
    if (flat.size() == 1) return flat.front();
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children = std::move(flat);
    return Formula(std::move(n));
  }

  static void collect_free(const Formula& f, std::vector<std::string> bound, std::set<std::string>& out) {
    if (f.kind() == FormulaKind::Atom) {
      for (const Term* t : {&f.lhs(), &f.rhs()}) {
        for (const auto& v : t->variables()) {
          if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
        }
      }
      return;
    }
    if (f.is_quantifier()) bound.push_back(f.var());
    for (const auto& c : f.children()) collect_free(c, bound, out);
  }

  std::shared_ptr<const Node> node_;
};

/// A formula together with its ordered point variables x and parameters y.
struct DefinableFormula {
  Formula formula = Formula::truth();
  std::vector<std::string> vars;
  std::vector<std::string> params;
};

namespace detail {

inline int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return 0;
    case FormulaKind::Iff:
      return 1;
    case FormulaKind::Implies:
      return 2;
    case FormulaKind::Or:
      return 3;
    case FormulaKind::And:
      return 4;
    case FormulaKind::Not:
      return f.child().kind() == FormulaKind::Atom ? 6 : 5;
    case FormulaKind::Atom:
      return 6;
  }
  return 6;
}

inline void print_formula(const Formula& f, int min_prec, std::string& out) {
  const int prec = precedence(f);
  const bool parens = prec < min_prec;
  if (parens) out += "(";
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += to_string(f.lhs()) + " = " + to_string(f.rhs());
      break;
    case FormulaKind::Not:
      if (f.child().kind() == FormulaKind::Atom) {
        out += to_string(f.child().lhs()) + " != " + to_string(f.child().rhs());
      } else {
        out += "!";
        print_formula(f.child(), 5, out);
      }
      break;
    case FormulaKind::And:
    case FormulaKind::Or: {
      const char* sep = f.kind() == FormulaKind::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i != 0) out += sep;
        print_formula(f.children()[i], prec + 1, out);
      }
      break;
    }
    case FormulaKind::Implies:
      print_formula(f.children()[0], prec + 1, out);
      out += " -> ";
      print_formula(f.children()[1], prec, out);
      break;
    case FormulaKind::Iff:
      print_formula(f.children()[0], prec, out);
      out += " <-> ";
      print_formula(f.children()[1], prec + 1, out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind() == FormulaKind::Exists ? "exists " : "forall ";
      out += f.var() + ". ";
      print_formula(f.child(), 0, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace detail

/// ASCII rendering that the parser reads back to a structurally equal tree.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print_formula(f, 0, out);
  return out;
}

}  // namespace defsum
