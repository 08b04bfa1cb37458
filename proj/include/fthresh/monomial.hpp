#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "fthresh/error.hpp"

namespace fthresh {

/// Exponent vector x_1^{a_1} ... x_n^{a_n}. Exponents are 32-bit; overflow is
/// an error, never wraparound.
class Monomial {
public:
  using exponent_type = std::uint32_t;

  Monomial() = default;
  /// The monomial 1 in `nvars` variables.
  static Monomial one(std::size_t nvars) {
    return Monomial(std::vector<exponent_type>(nvars, 0));
  }
  explicit Monomial(std::vector<exponent_type> exps) : exps_(std::move(exps)) {
    for (auto a : exps_)
      degree_ += a;
  }

  static Monomial variable(std::size_t nvars, std::size_t index,
                           exponent_type power = 1) {
    Monomial m = one(nvars);
    m.exps_[index] = power;
    m.degree_ = power;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  exponent_type operator[](std::size_t i) const noexcept { return exps_[i]; }
  const std::vector<exponent_type> &exponents() const noexcept { return exps_; }
  std::uint64_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  bool divides(const Monomial &other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i])
        return false;
    return true;
  }

  Monomial operator*(const Monomial &o) const {
    Monomial r = one(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
      r.exps_[i] = checked_add(exps_[i], o.exps_[i]);
    r.degree_ = degree_ + o.degree_;
    return r;
  }

  /// this / d; `d` must divide this.
  Monomial operator/(const Monomial &d) const {
    Monomial r = one(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i)
      r.exps_[i] = exps_[i] - d.exps_[i];
    r.degree_ = degree_ - d.degree_;
    return r;
  }

  Monomial pow(std::uint64_t n) const {
    Monomial r = one(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      std::uint64_t v = std::uint64_t{exps_[i]} * n;
      if (n != 0 && v / n != exps_[i])
        throw OverflowError("monomial exponent overflow");
      r.exps_[i] = narrow(v);
      r.degree_ += v;
    }
    return r;
  }

  friend Monomial lcm(const Monomial &a, const Monomial &b) {
    Monomial r = one(a.exps_.size());
    for (std::size_t i = 0; i < a.exps_.size(); ++i) {
      r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
      r.degree_ += r.exps_[i];
    }
    return r;
  }

  friend bool coprime(const Monomial &a, const Monomial &b) noexcept {
    for (std::size_t i = 0; i < a.exps_.size(); ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0)
        return false;
    return true;
  }

  friend bool operator==(const Monomial &a, const Monomial &b) noexcept {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

  /// Graded reverse lexicographic order; x_1 > x_2 > ... > x_n.
  friend std::strong_ordering operator<=>(const Monomial &a,
                                          const Monomial &b) noexcept {
    if (a.degree_ != b.degree_)
      return a.degree_ <=> b.degree_;
    for (std::size_t i = a.exps_.size(); i-- > 0;) {
      if (a.exps_[i] != b.exps_[i])
        return b.exps_[i] <=> a.exps_[i];
    }
    return std::strong_ordering::equal;
  }

private:
  static exponent_type narrow(std::uint64_t v) {
    if (v > std::numeric_limits<exponent_type>::max())
      throw OverflowError("monomial exponent overflow");
    return static_cast<exponent_type>(v);
  }
  static exponent_type checked_add(exponent_type a, exponent_type b) {
    return narrow(std::uint64_t{a} + b);
  }

  std::vector<exponent_type> exps_;
  std::uint64_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial &m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto a : m.exponents()) {
      h ^= a;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

} // namespace fthresh
