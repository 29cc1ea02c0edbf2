#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace goedel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula, signature, theory or JSON text. `position` is a byte
/// offset into the input (or a line number for line-oriented formats).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        message_(message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// Undeclared symbol, arity mismatch or name clash.
class SymbolError : public Error {
 public:
  using Error::Error;
};

/// Uninterpreted symbol or unbound variable during evaluation.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// An operation restricted to the propositional fragment got a
/// first-order formula.
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// A search exceeded its configured budget before reaching a verdict.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition does not hold (e.g. asking for an
/// interpolant of a non-entailment).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Indicates a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace goedel
