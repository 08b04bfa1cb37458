#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "fthresh/error.hpp"

namespace fthresh {

/// The prime field F_p, 2 <= p < 2^31. Residues are kept in [0, p).
class PrimeField {
public:
  using value_type = std::uint32_t;

  static constexpr std::uint64_t max_prime = (std::uint64_t{1} << 31);

  explicit PrimeField(std::uint64_t p) : p_(static_cast<value_type>(p)) {
    if (p < 2 || p >= max_prime)
      throw PreconditionError("characteristic " + std::to_string(p) +
                              " outside [2, 2^31)");
    if (!is_prime(p))
      throw PreconditionError("characteristic " + std::to_string(p) +
                              " is not prime");
  }

  static constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2)
      return false;
    if (n % 2 == 0)
      return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
      if (n % d == 0)
        return false;
    return true;
  }

  value_type characteristic() const noexcept { return p_; }

  value_type reduce(std::uint64_t x) const noexcept {
    return static_cast<value_type>(x % p_);
  }
  value_type reduce_signed(std::int64_t x) const noexcept {
    auto r = x % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }

  value_type add(value_type a, value_type b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const noexcept {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
  }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }
  value_type pow(value_type a, std::uint64_t n) const noexcept {
    std::uint64_t result = 1 % p_, base = a;
    while (n) {
      if (n & 1)
        result = (result * base) % p_;
      base = (base * base) % p_;
      n >>= 1;
    }
    return static_cast<value_type>(result);
  }
  /// Fermat inverse; `a` must be nonzero.
  value_type inv(value_type a) const {
    if (a == 0)
      throw PreconditionError("division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  friend bool operator==(const PrimeField &, const PrimeField &) = default;

private:
  value_type p_;
};

/// An element of F_p carrying its field by value (a single word).
class FieldElement {
public:
  FieldElement(PrimeField field, std::int64_t value)
      : field_(field), value_(field.reduce_signed(value)) {}

  std::uint32_t value() const noexcept { return value_; }
  const PrimeField &field() const noexcept { return field_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator+(const FieldElement &o) const {
    check(o);
    return raw(field_, field_.add(value_, o.value_));
  }
  FieldElement operator-(const FieldElement &o) const {
    check(o);
    return raw(field_, field_.sub(value_, o.value_));
  }
  FieldElement operator*(const FieldElement &o) const {
    check(o);
    return raw(field_, field_.mul(value_, o.value_));
  }
  FieldElement operator-() const { return raw(field_, field_.neg(value_)); }
  FieldElement inverse() const { return raw(field_, field_.inv(value_)); }

  friend bool operator==(const FieldElement &, const FieldElement &) = default;

  friend std::ostream &operator<<(std::ostream &os, const FieldElement &x) {
    return os << x.value_;
  }

private:
  static FieldElement raw(PrimeField f, std::uint32_t v) {
    FieldElement e(f, 0);
    e.value_ = v;
    return e;
  }
  void check(const FieldElement &o) const {
    if (!(field_ == o.field_))
      throw PreconditionError("field mismatch");
  }

  PrimeField field_;
  std::uint32_t value_;
};

} // namespace fthresh
