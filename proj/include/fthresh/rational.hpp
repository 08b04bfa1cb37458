#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "fthresh/error.hpp"

namespace fthresh {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thresholds live at parameters of the form a/p^e, but guesses and user
/// supplied parameters can be arbitrary rationals, so the representation is
/// arbitrary precision.
class PRational {
public:
  PRational() = default;
  PRational(std::int64_t n) : value_(n) {} // NOLINT: implicit from integers
  PRational(const BigInt &num, const BigInt &den) {
    if (den == 0)
      throw PreconditionError("rational with zero denominator");
    value_ = boost::multiprecision::cpp_rational(num, den);
  }

  /// Accepts "a", "a/b" and "-a/b" with decimal integers.
  static PRational parse(std::string_view text) {
    auto bad = [&] {
      return ParseError("malformed rational '" + std::string(text) + "'", 1);
    };
    auto slash = text.find('/');
    auto num_text = text.substr(0, slash);
    auto is_int = [](std::string_view s) {
      if (!s.empty() && s.front() == '-')
        s.remove_prefix(1);
      if (s.empty())
        return false;
      for (char c : s)
        if (c < '0' || c > '9')
          return false;
      return true;
    };
    if (!is_int(num_text))
      throw bad();
    BigInt num{std::string(num_text)};
    BigInt den = 1;
    if (slash != std::string_view::npos) {
      auto den_text = text.substr(slash + 1);
      if (!is_int(den_text) || den_text.front() == '-')
        throw bad();
      den = BigInt{std::string(den_text)};
      if (den == 0)
        throw bad();
    }
    return PRational(num, den);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const {
    return boost::multiprecision::denominator(value_);
  }

  /// Largest integer <= this.
  BigInt floor() const {
    BigInt n = numerator(), d = denominator();
    BigInt q = n / d; // truncates toward zero
    if (n < 0 && q * d != n)
      --q;
    return q;
  }
  BigInt ceil() const {
    BigInt f = floor();
    return f * denominator() == numerator() ? f : f + 1;
  }

  double to_double() const { return value_.convert_to<double>(); }

  /// "a/b", or "a" when the denominator is 1.
  std::string to_string() const {
    auto d = denominator();
    if (d == 1)
      return numerator().str();
    return numerator().str() + "/" + d.str();
  }

  PRational operator+(const PRational &o) const { return from(value_ + o.value_); }
  PRational operator-(const PRational &o) const { return from(value_ - o.value_); }
  PRational operator*(const PRational &o) const { return from(value_ * o.value_); }
  PRational operator/(const PRational &o) const {
    if (o.value_ == 0)
      throw PreconditionError("rational division by zero");
    return from(value_ / o.value_);
  }
  PRational operator-() const { return from(-value_); }

  friend bool operator==(const PRational &a, const PRational &b) {
    return a.value_ == b.value_;
  }
  /// Exact comparison by cross-multiplication.
  friend std::strong_ordering operator<=>(const PRational &a,
                                          const PRational &b) {
    BigInt lhs = a.numerator() * b.denominator();
    BigInt rhs = b.numerator() * a.denominator();
    if (lhs < rhs)
      return std::strong_ordering::less;
    if (lhs > rhs)
      return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream &operator<<(std::ostream &os, const PRational &r) {
    return os << r.to_string();
  }

private:
  static PRational from(boost::multiprecision::cpp_rational v) {
    PRational r;
    r.value_ = std::move(v);
    return r;
  }

  boost::multiprecision::cpp_rational value_;
};

inline std::strong_ordering prational_cmp(const PRational &a,
                                          const PRational &b) {
  return a <=> b;
}

} // namespace fthresh
