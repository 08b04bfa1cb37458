#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fthresh/error.hpp"
#include "fthresh/field.hpp"
#include "fthresh/monomial.hpp"

namespace fthresh {

/// F_p[x_1, ..., x_n] with a fixed variable order. Shared read-only between
/// every polynomial of the ring.
struct Ring {
  PrimeField field;
  std::vector<std::string> variables;

  std::size_t nvars() const noexcept { return variables.size(); }
  std::uint32_t characteristic() const noexcept {
    return field.characteristic();
  }

  friend bool operator==(const Ring &, const Ring &) = default;
};

using RingPtr = std::shared_ptr<const Ring>;

inline bool valid_identifier(const std::string &name) {
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (name.empty() || !alpha(name.front()))
    return false;
  return std::all_of(name.begin(), name.end(), [&](char c) {
    return alpha(c) || (c >= '0' && c <= '9');
  });
}

inline RingPtr make_ring(std::uint64_t p, std::vector<std::string> variables) {
  PrimeField field(p);
  if (variables.empty())
    throw PreconditionError("ring needs at least one variable");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (!valid_identifier(variables[i]))
      throw PreconditionError("invalid variable name '" + variables[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (variables[i] == variables[j])
        throw PreconditionError("duplicate variable '" + variables[i] + "'");
  }
  return std::make_shared<const Ring>(Ring{field, std::move(variables)});
}

inline bool same_ring(const RingPtr &a, const RingPtr &b) {
  return a == b || *a == *b;
}

struct Term {
  Monomial monomial;
  std::uint32_t coeff;

  friend bool operator==(const Term &, const Term &) = default;
};

/// Sparse polynomial over F_p. Terms are kept in strictly decreasing grevlex
/// order with nonzero coefficients, so equality is structural.
class Poly {
public:
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, std::int64_t c) {
    Poly r(std::move(ring));
    auto v = r.field().reduce_signed(c);
    if (v != 0)
      r.terms_.push_back({Monomial::one(r.ring_->nvars()), v});
    return r;
  }
  static Poly variable(RingPtr ring, std::size_t index) {
    Poly r(std::move(ring));
    r.terms_.push_back({Monomial::variable(r.ring_->nvars(), index), 1});
    return r;
  }
  static Poly monomial(RingPtr ring, Monomial m, std::uint32_t coeff = 1) {
    Poly r(std::move(ring));
    coeff = r.field().reduce(coeff);
    if (coeff != 0)
      r.terms_.push_back({std::move(m), coeff});
    return r;
  }
  /// Canonicalizes: sorts, merges equal monomials, drops zeros.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms) {
    Poly r(std::move(ring));
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) {
      return a.monomial > b.monomial;
    });
    for (auto &t : terms) {
      t.coeff = r.field().reduce(t.coeff);
      if (!r.terms_.empty() && r.terms_.back().monomial == t.monomial) {
        r.terms_.back().coeff = r.field().add(r.terms_.back().coeff, t.coeff);
        if (r.terms_.back().coeff == 0)
          r.terms_.pop_back();
      } else if (t.coeff != 0) {
        r.terms_.push_back(std::move(t));
      }
    }
    return r;
  }

  const RingPtr &ring() const noexcept { return ring_; }
  const PrimeField &field() const noexcept { return ring_->field; }
  const std::vector<Term> &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
  }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  /// Requires a nonzero polynomial.
  const Term &leading_term() const { return terms_.front(); }
  const Monomial &leading_monomial() const { return terms_.front().monomial; }

  std::uint64_t total_degree() const noexcept {
    std::uint64_t d = 0;
    for (const auto &t : terms_)
      d = std::max(d, t.monomial.degree());
    return d;
  }

  FieldElement coefficient(const Monomial &m) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m,
        [](const Term &t, const Monomial &key) { return t.monomial > key; });
    if (it != terms_.end() && it->monomial == m)
      return FieldElement(field(), it->coeff);
    return FieldElement(field(), 0);
  }

  /// Value at the origin, i.e. the constant coefficient.
  std::uint32_t constant_term() const noexcept {
    if (!terms_.empty() && terms_.back().monomial.is_one())
      return terms_.back().coeff;
    return 0;
  }

  Poly operator+(const Poly &o) const { return merge(o, false); }
  Poly operator-(const Poly &o) const { return merge(o, true); }
  Poly operator-() const {
    Poly r = *this;
    for (auto &t : r.terms_)
      t.coeff = field().neg(t.coeff);
    return r;
  }

  Poly operator*(const Poly &o) const {
    check_ring(o);
    if (is_zero() || o.is_zero())
      return Poly(ring_);
    if (size() == 1)
      return o.mul_term(terms_[0].monomial, terms_[0].coeff);
    if (o.size() == 1)
      return mul_term(o.terms_[0].monomial, o.terms_[0].coeff);
    const auto &F = field();
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> acc;
    acc.reserve(size() * o.size());
    for (const auto &a : terms_)
      for (const auto &b : o.terms_) {
        auto [it, fresh] = acc.try_emplace(a.monomial * b.monomial, 0);
        it->second = F.add(it->second, F.mul(a.coeff, b.coeff));
      }
    Poly r(ring_);
    r.terms_.reserve(acc.size());
    for (auto &[m, c] : acc)
      if (c != 0)
        r.terms_.push_back({m, c});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term &x, const Term &y) { return x.monomial > y.monomial; });
    return r;
  }

  /// c * m * this; monomial multiplication preserves term order.
  Poly mul_term(const Monomial &m, std::uint32_t c) const {
    Poly r(ring_);
    c = field().reduce(c);
    if (c == 0)
      return r;
    r.terms_.reserve(terms_.size());
    for (const auto &t : terms_)
      r.terms_.push_back({t.monomial * m, field().mul(t.coeff, c)});
    return r;
  }

  Poly scaled(std::uint32_t c) const {
    return mul_term(Monomial::one(ring_->nvars()), c);
  }

  /// Scales so the leading coefficient is 1; zero stays zero.
  Poly monic() const {
    if (is_zero())
      return *this;
    return scaled(field().inv(terms_[0].coeff));
  }

  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (k)
        out += '+';
      const auto &t = terms_[k];
      std::string mono;
      for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        auto a = t.monomial[i];
        if (a == 0)
          continue;
        if (!mono.empty())
          mono += '*';
        mono += ring_->variables[i];
        if (a > 1)
          mono += '^' + std::to_string(a);
      }
      if (mono.empty())
        out += std::to_string(t.coeff);
      else if (t.coeff == 1)
        out += mono;
      else
        out += std::to_string(t.coeff) + '*' + mono;
    }
    return out;
  }

  friend bool operator==(const Poly &a, const Poly &b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
  }

  friend std::ostream &operator<<(std::ostream &os, const Poly &f) {
    return os << f.to_string();
  }

private:
  void check_ring(const Poly &o) const {
    if (!same_ring(ring_, o.ring_))
      throw PreconditionError("polynomials from different rings");
  }

  Poly merge(const Poly &o, bool subtract) const {
    check_ring(o);
    const auto &F = field();
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() ||
          (i < terms_.size() && terms_[i].monomial > o.terms_[j].monomial)) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      auto c = subtract ? F.neg(o.terms_[j].coeff) : o.terms_[j].coeff;
      if (i < terms_.size() && terms_[i].monomial == o.terms_[j].monomial) {
        c = F.add(terms_[i].coeff, c);
        if (c != 0)
          r.terms_.push_back({terms_[i].monomial, c});
        ++i;
      } else if (c != 0) {
        r.terms_.push_back({o.terms_[j].monomial, c});
      }
      ++j;
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Limit on intermediate polynomial size (number of terms).
struct Budget {
  std::size_t max_terms = 1'000'000;

  void check(const Poly &f) const {
    if (f.size() > max_terms)
      throw ResourceError("term budget exceeded: " + std::to_string(f.size()) +
                          " > " + std::to_string(max_terms) + " terms");
  }
};

/// f^n by binary exponentiation; f^0 = 1.
inline Poly poly_pow(const Poly &f, std::uint64_t n, const Budget &budget = {}) {
  Poly result = Poly::constant(f.ring(), 1);
  if (n == 0)
    return result;
  if (f.is_monomial()) {
    const auto &t = f.leading_term();
    return Poly::monomial(f.ring(), t.monomial.pow(n), f.field().pow(t.coeff, n));
  }
  Poly base = f;
  for (;;) {
    if (n & 1) {
      result = result * base;
      budget.check(result);
    }
    n >>= 1;
    if (!n)
      break;
    base = base * base;
    budget.check(base);
  }
  return result;
}

} // namespace fthresh
