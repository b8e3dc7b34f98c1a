#pragma once

#include "defsum/error.hpp"
#include "defsum/formula.hpp"
#include "defsum/term.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace defsum {

namespace detail {

enum class Tok {
  End,
  Ident,
  Int,
  Plus,
  Minus,
  Star,
  Caret,
  Eq,
  Neq,
  Bang,
  Amp,
  Bar,
  Arrow,
  DoubleArrow,
  LParen,
  RParen,
  Dot,
  Exists,
  Forall,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      lex_one(t);
      out.push_back(std::move(t));
    }
  }

 private:
  struct Alias {
    std::string_view text;
    Tok kind;
  };

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance(1);
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else {
        return;
      }
    }
  }

  void advance(std::size_t bytes) {
    pos_ += bytes;
    ++column_;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  void lex_one(Token& t) {
    static constexpr Alias aliases[] = {
        {"<->", Tok::DoubleArrow}, {"->", Tok::Arrow},  {"!=", Tok::Neq},
        {"↔", Tok::DoubleArrow}, {"→", Tok::Arrow}, {"≠", Tok::Neq},
        {"¬", Tok::Bang},     {"∧", Tok::Amp},  {"∨", Tok::Bar},
        {"∃", Tok::Exists},   {"∀", Tok::Forall}, {"−", Tok::Minus},
        {"·", Tok::Star},     {"+", Tok::Plus},      {"-", Tok::Minus},
        {"*", Tok::Star},          {"^", Tok::Caret},     {"=", Tok::Eq},
        {"!", Tok::Bang},          {"&", Tok::Amp},       {"|", Tok::Bar},
        {"(", Tok::LParen},        {")", Tok::RParen},    {".", Tok::Dot},
    };
    for (const auto& a : aliases) {
      if (starts_with(a.text)) {
        t.kind = a.kind;
        t.text = std::string(a.text);
        pos_ += a.text.size();
        ++column_;
        if (a.text.size() > 1 && static_cast<unsigned char>(a.text[0]) < 0x80) column_ += a.text.size() - 1;
        return;
      }
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
      t.kind = Tok::Int;
      t.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < src_.size()) {
        const char d = src_[pos_];
        if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_' && d != '\'') break;
        advance(1);
      }
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = t.text == "exists" ? Tok::Exists : t.text == "forall" ? Tok::Forall : Tok::Ident;
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line_, column_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string> declared, bool infer)
      : toks_(Lexer(text).run()), declared_(std::move(declared)), infer_(infer) {}

  Formula formula_document() {
    Formula f = iff();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_document() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  const std::vector<std::string>& inferred() const noexcept { return inferred_; }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  void expect(Tok k, const char* what) {
    if (!accept(k)) {
      fail(std::string("expected ") + what + (at(Tok::End) ? " but reached end of input" : " near '" + peek().text + "'"));
    }
  }

  Formula iff() {
    Formula lhs = implication();
    while (accept(Tok::DoubleArrow)) lhs = Formula::iff(lhs, implication());
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept(Tok::Bar)) parts.push_back(conjunction());
    return parts.size() == 1 ? parts.front() : Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept(Tok::Amp)) parts.push_back(unary());
    return parts.size() == 1 ? parts.front() : Formula::conjunction(std::move(parts));
  }

  Formula unary() {
    if (accept(Tok::Bang)) return Formula::negation(unary());
    if (at(Tok::Exists) || at(Tok::Forall)) return quantified();
    if (at(Tok::LParen)) {
      const auto save = pos_;
      const auto inferred_before = inferred_.size();
      const auto bound_before = bound_.size();
      const auto declared_before = declared_.size();
      try {
        return atom();
      } catch (const ParseError& as_atom) {
        const std::size_t atom_reach = furthest_;
        pos_ = save;
        furthest_ = save;
        inferred_.resize(inferred_before);
        declared_.resize(declared_before);
        bound_.resize(bound_before);
        try {
          ++pos_;
          Formula inner = iff();
          expect(Tok::RParen, "')'");
          furthest_ = std::max(furthest_, atom_reach);
          return inner;
        } catch (const ParseError&) {
          if (atom_reach > furthest_) throw as_atom;
          throw;
        }
      }
    }
    return atom();
  }

  Formula quantified() {
    const bool is_exists = at(Tok::Exists);
    ++pos_;
    if (!at(Tok::Ident)) fail("expected a variable after quantifier");
    std::string name = peek().text;
    if (is_bound(name) || is_declared(name)) fail("variable '" + name + "' is already bound");
    ++pos_;
    expect(Tok::Dot, "'.' after quantified variable");
    bound_.push_back(name);
    Formula body = iff();
    bound_.pop_back();
    return is_exists ? Formula::exists(std::move(name), std::move(body))
                     : Formula::forall(std::move(name), std::move(body));
  }

  Formula atom() {
    Term lhs = term();
    if (accept(Tok::Eq)) return Formula::atom(std::move(lhs), term());
    if (accept(Tok::Neq)) return Formula::negation(Formula::atom(std::move(lhs), term()));
    note_reach();
    fail("expected '=' or '!='");
  }

  Term term() {
    Term acc;
    bool first = true;
    for (;;) {
      bool negative = false;
      if (first) {
        negative = accept(Tok::Minus);
      } else if (accept(Tok::Minus)) {
        negative = true;
      } else if (!accept(Tok::Plus)) {
        return acc;
      }
      Term p = product();
      acc = negative ? acc - p : acc + p;
      first = false;
    }
  }

  Term product() {
    Term acc = power();
    while (accept(Tok::Star)) acc *= power();
    return acc;
  }

  Term power() {
    Term base = primary();
    if (accept(Tok::Caret)) {
      if (!at(Tok::Int)) fail("expected an integer exponent");
      const std::string digits = peek().text;
      if (digits.size() > 6) fail("exponent too large");
      ++pos_;
      base = base.pow(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    return base;
  }

  Term primary() {
    note_reach();
    if (at(Tok::Int)) {
      Term t = Term::constant(BigInt(peek().text));
      ++pos_;
      return t;
    }
    if (at(Tok::Ident)) {
      const std::string name = peek().text;
      if (!is_bound(name) && !is_declared(name)) {
        if (!infer_) fail("unbound variable '" + name + "'");
        declared_.push_back(name);
        inferred_.push_back(name);
      }
      ++pos_;
      return Term::variable(name);
    }
    if (accept(Tok::LParen)) {
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (accept(Tok::Minus)) return -power();
    fail(at(Tok::End) ? "unexpected end of input" : "unexpected '" + peek().text + "'");
  }

  void note_reach() { furthest_ = std::max(furthest_, pos_); }

  bool is_bound(const std::string& name) const {
    return std::find(bound_.begin(), bound_.end(), name) != bound_.end();
  }

  bool is_declared(const std::string& name) const {
    return std::find(declared_.begin(), declared_.end(), name) != declared_.end();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t furthest_ = 0;
  std::vector<std::string> declared_;
  std::vector<std::string> bound_;
  std::vector<std::string> inferred_;
  bool infer_;
};

inline void check_disjoint(const std::vector<std::string>& vars, const std::vector<std::string>& params) {
  std::vector<std::string> all = vars;
  all.insert(all.end(), params.begin(), params.end());
  std::sort(all.begin(), all.end());
  auto dup = std::adjacent_find(all.begin(), all.end());
  if (dup != all.end()) throw ParseError("name '" + *dup + "' is declared twice", 1, 1);
}

}  // namespace detail

/// Parses formula text in which every unquantified name must be declared in
/// `vars` or `params`.
inline Formula parse_formula(std::string_view text, const std::vector<std::string>& vars,
                             const std::vector<std::string>& params = {}) {
  detail::check_disjoint(vars, params);
  std::vector<std::string> declared = vars;
  declared.insert(declared.end(), params.begin(), params.end());
  return detail::Parser(text, std::move(declared), false).formula_document();
}

inline DefinableFormula parse_definable(std::string_view text, const std::vector<std::string>& vars,
                                        const std::vector<std::string>& params = {}) {
  return DefinableFormula{parse_formula(text, vars, params), vars, params};
}

/// Parses with free variables inferred in order of first occurrence. Every
/// inferred name becomes a point variable and is reported through `warnings`.
inline DefinableFormula parse_formula_inferring(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  detail::Parser parser(text, {}, true);
  Formula f = parser.formula_document();
  if (warnings != nullptr && !parser.inferred().empty()) {
    std::string names;
    for (const auto& n : parser.inferred()) names += (names.empty() ? "" : ", ") + n;
    warnings->push_back("free variables inferred by first occurrence: " + names);
  }
  return DefinableFormula{f, parser.inferred(), {}};
}

/// Parses a term whose names must all appear in `names`.
inline Term parse_term(std::string_view text, const std::vector<std::string>& names) {
  return detail::Parser(text, names, false).term_document();
}

}  // namespace defsum
