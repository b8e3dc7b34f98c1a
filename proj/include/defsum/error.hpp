#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace defsum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula or term text. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An argument outside the domain of an operation (non-prime p, zero divisor, bad degree...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A job whose up-front cost estimate exceeds the configured budget.
class BudgetError : public Error {
 public:
  BudgetError(double estimate, double budget)
      : Error("cost estimate " + format(estimate) + " exceeds budget " + format(budget)),
        estimate_(estimate),
        budget_(budget) {}

  double estimate() const noexcept { return estimate_; }
  double budget() const noexcept { return budget_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
  }

  double estimate_;
  double budget_;
};

/// A sequence with no linear recurrence of order at most half its length.
class SequenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace defsum
