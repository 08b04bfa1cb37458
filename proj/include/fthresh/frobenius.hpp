#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fthresh/error.hpp"
#include "fthresh/groebner.hpp"
#include "fthresh/poly.hpp"

namespace fthresh {

/// Frobenius level e together with q = p^e.
class FrobeniusLevel {
public:
  FrobeniusLevel(std::uint32_t p, unsigned e) : p_(p), e_(e) {
    for (unsigned i = 0; i < e; ++i) {
      if (q_ > std::numeric_limits<std::uint32_t>::max() / p)
        throw ResourceError("p^e = " + std::to_string(p) + "^" +
                            std::to_string(e) + " exceeds 32 bits");
      q_ *= p;
    }
  }
  static FrobeniusLevel of(const RingPtr &ring, unsigned e) {
    return FrobeniusLevel(ring->characteristic(), e);
  }

  std::uint32_t p() const noexcept { return p_; }
  unsigned e() const noexcept { return e_; }
  std::uint64_t q() const noexcept { return q_; }

  friend bool operator==(const FrobeniusLevel &, const FrobeniusLevel &) = default;

private:
  std::uint32_t p_;
  unsigned e_;
  std::uint64_t q_ = 1;
};

/// g^q computed termwise: (sum c m)^q = sum c m^q in characteristic p, since
/// c^q = c for c in F_p.
inline Poly frobenius(const Poly &g, const FrobeniusLevel &level) {
  std::vector<Term> terms;
  terms.reserve(g.size());
  for (const auto &t : g.terms())
    terms.push_back({t.monomial.pow(level.q()), t.coeff});
  // Order is preserved by m -> m^q, but from_terms keeps this independent of
  // that fact.
  return Poly::from_terms(g.ring(), std::move(terms));
}

/// J^{[q]}: the ideal generated by q-th powers of generators. When J carries
/// a reduced Groebner basis its Frobenius image is again one, so the basis
/// is carried over.
inline Ideal bracket_power(const Ideal &J, const FrobeniusLevel &level) {
  const auto &gens = J.has_basis() ? J.basis() : J.generators();
  std::vector<Poly> powered;
  powered.reserve(gens.size());
  for (const auto &g : gens)
    powered.push_back(frobenius(g, level));
  if (J.has_basis())
    return Ideal::from_reduced_basis(J.ring(), std::move(powered));
  return Ideal(J.ring(), std::move(powered));
}

/// Decomposes g = sum_mu h_mu^q * mu over monomials mu with all exponents < q
/// and returns the h_mu. Splits each exponent vector a as q*floor(a/q) +
/// (a mod q).
inline std::vector<Poly> root_components(const Poly &g,
                                         const FrobeniusLevel &level) {
  const auto q = level.q();
  const auto n = g.ring()->nvars();
  std::map<std::vector<Monomial::exponent_type>, std::vector<Term>> parts;
  for (const auto &t : g.terms()) {
    std::vector<Monomial::exponent_type> quotient(n), residue(n);
    for (std::size_t i = 0; i < n; ++i) {
      quotient[i] = static_cast<Monomial::exponent_type>(t.monomial[i] / q);
      residue[i] = static_cast<Monomial::exponent_type>(t.monomial[i] % q);
    }
    // The coefficient is its own q-th root in F_p.
    parts[residue].push_back({Monomial(std::move(quotient)), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(parts.size());
  for (auto &[mu, terms] : parts)
    out.push_back(Poly::from_terms(g.ring(), std::move(terms)));
  return out;
}

/// I ⊆ K^{[q]} for the computed root K.
inline bool root_postcondition_holds(const Ideal &I, const Ideal &root,
                                     const FrobeniusLevel &level) {
  Ideal bracket = groebner_basis(bracket_power(groebner_basis(root), level));
  for (const auto &g : I.generators())
    if (!contains(g, bracket))
      return false;
  return true;
}

/// I^{[1/q]}: the smallest ideal K with I ⊆ K^{[q]}. Roots are additive over
/// generators, so each generator is decomposed separately.
inline Ideal eth_root(const Ideal &I, const FrobeniusLevel &level) {
  if (level.e() == 0)
    return groebner_basis(I);
  std::vector<Poly> gens;
  const auto &source = I.has_basis() ? I.basis() : I.generators();
  for (const auto &g : source)
    for (auto &h : root_components(g, level))
      gens.push_back(std::move(h));
  Ideal root = groebner_basis(Ideal(I.ring(), std::move(gens)));
#ifndef NDEBUG
  if (!root_postcondition_holds(I, root, level))
    throw InvariantError("eth_root postcondition I ⊆ root^[q] failed");
#endif
  return root;
}

/// (f^N * K)^{[1/p^e]} without forming f^N: peel one base-p digit of N per
/// level using (g^p h)^{[1/p]} = g * h^{[1/p]}.
inline Ideal eth_root_of_power(const Poly &f, std::uint64_t N,
                               const FrobeniusLevel &level, Ideal K,
                               const Budget &budget = {}) {
  const auto p = level.p();
  const FrobeniusLevel one(p, 1);
  for (unsigned step = 0; step < level.e(); ++step) {
    auto digit = N % p;
    N /= p;
    Ideal Kb = groebner_basis(K);
    if (Kb.is_unit() && digit == 0)
      continue;
    Poly fd = poly_pow(f, digit, budget);
    std::vector<Poly> gens;
    for (const auto &g : Kb.basis())
      gens.push_back(fd * g);
    K = eth_root(Ideal(f.ring(), std::move(gens)), one);
  }
  Poly fN = poly_pow(f, N, budget);
  const Ideal Kb = groebner_basis(K);
  std::vector<Poly> gens;
  for (const auto &g : Kb.basis())
    gens.push_back(fN * g);
  return groebner_basis(Ideal(f.ring(), std::move(gens)));
}

inline Ideal eth_root_of_power(const Poly &f, std::uint64_t N,
                               const FrobeniusLevel &level,
                               const Budget &budget = {}) {
  return eth_root_of_power(f, N, level, Ideal::unit(f.ring()), budget);
}

/// f^a not in m^{[p^e]}, m the homogeneous maximal ideal: the map sending 1
/// to f^{a/p^e} splits.
inline bool splitting_test(const Poly &f, std::uint64_t a,
                           const FrobeniusLevel &level,
                           const Budget &budget = {}) {
  Ideal mq = bracket_power(groebner_basis(Ideal::maximal(f.ring())), level);
  return !pow_mod(f, a, mq, budget).is_zero();
}

/// Fedder's criterion at the origin: R/f is F-pure iff f^{p-1} not in m^{[p]}.
inline bool fedder_fpure(const Poly &f, const Budget &budget = {}) {
  if (f.is_zero())
    throw PreconditionError("fedder_fpure: f must be nonzero");
  if (f.constant_term() != 0)
    throw PreconditionError("fedder_fpure: f does not vanish at the origin");
  return splitting_test(f, f.ring()->characteristic() - 1,
                        FrobeniusLevel::of(f.ring(), 1), budget);
}

} // namespace fthresh
