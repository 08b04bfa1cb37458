#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fthresh {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial or ideal text. `column` is 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t column)
      : Error(what + " at column " + std::to_string(column)), column_(column) {}
  /// `what` already carries its location.
  ParseError(const std::string &what, std::size_t column, bool)
      : Error(what), column_(column) {}

  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

/// An input violates an operation's precondition (e.g. f not in rad(J)).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A computation exceeded a configured budget (term count, Frobenius level).
class ResourceError : public Error {
public:
  using Error::Error;
};

/// 32-bit exponent overflow in monomial arithmetic.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Internal consistency check failed; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace fthresh
