#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fthresh/error.hpp"
#include "fthresh/poly.hpp"

namespace fthresh {

/// Ideal of F_p[x_1..x_n] given by generators, optionally carrying its reduced
/// grevlex Groebner basis. Once the basis is present two ideals are equal iff
/// their bases are equal.
class Ideal {
public:
  explicit Ideal(RingPtr ring) : ring_(std::move(ring)) {}
  Ideal(RingPtr ring, std::vector<Poly> generators) : ring_(std::move(ring)) {
    for (auto &g : generators) {
      if (!same_ring(g.ring(), ring_))
        throw PreconditionError("generator from a different ring");
      if (!g.is_zero())
        gens_.push_back(std::move(g));
    }
  }

  static Ideal unit(RingPtr ring) {
    auto one = Poly::constant(ring, 1);
    Ideal r(ring, {one});
    r.gb_ = std::vector<Poly>{one};
    return r;
  }
  /// Trusts `basis` to already be the reduced Groebner basis of the ideal it
  /// generates (e.g. a Frobenius image of one).
  static Ideal from_reduced_basis(RingPtr ring, std::vector<Poly> basis) {
    Ideal r(std::move(ring), basis);
    r.gb_ = std::move(basis);
    return r;
  }
  /// (x_1, ..., x_n).
  static Ideal maximal(const RingPtr &ring) {
    std::vector<Poly> gens;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      gens.push_back(Poly::variable(ring, i));
    return Ideal(ring, std::move(gens));
  }

  const RingPtr &ring() const noexcept { return ring_; }
  const std::vector<Poly> &generators() const & noexcept { return gens_; }
  std::vector<Poly> generators() && noexcept { return std::move(gens_); }
  bool has_basis() const noexcept { return gb_.has_value(); }
  const std::vector<Poly> &basis() const & {
    if (!gb_)
      throw InvariantError("Groebner basis requested before computation");
    return *gb_;
  }
  // By value on temporaries, so `for (auto &g : groebner_basis(I).basis())`
  // does not dangle.
  std::vector<Poly> basis() && {
    if (!gb_)
      throw InvariantError("Groebner basis requested before computation");
    return std::move(*gb_);
  }

  bool is_monomial() const {
    return std::all_of(gens_.begin(), gens_.end(),
                       [](const Poly &g) { return g.is_monomial(); });
  }
  bool is_zero() const noexcept { return gens_.empty(); }
  /// Only meaningful once the basis is known.
  bool is_unit() const {
    return has_basis() && gb_->size() == 1 && (*gb_)[0].is_constant();
  }

  std::string to_string() const {
    const auto &g = gb_ ? *gb_ : gens_;
    std::string out = "(";
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i)
        out += ", ";
      out += g[i].to_string();
    }
    return out + ")";
  }

private:
  friend Ideal groebner_basis(const Ideal &I);

  RingPtr ring_;
  std::vector<Poly> gens_;
  std::optional<std::vector<Poly>> gb_;
};

namespace detail {

inline bool monomial_in(const Monomial &m, const std::vector<Poly> &monomial_gens) {
  for (const auto &g : monomial_gens)
    if (g.leading_monomial().divides(m))
      return true;
  return false;
}

inline bool all_monomial(const std::vector<Poly> &basis) {
  return std::all_of(basis.begin(), basis.end(),
                     [](const Poly &g) { return g.is_monomial(); });
}

/// Remainder of f by `basis` (any set of polynomials, not necessarily a
/// Groebner basis). Reduces every term, not only the leading one.
inline Poly reduce(const Poly &f, const std::vector<Poly> &basis) {
  if (basis.empty() || f.is_zero())
    return f;
  const auto &F = f.field();
  if (all_monomial(basis)) {
    std::vector<Term> kept;
    for (const auto &t : f.terms())
      if (!monomial_in(t.monomial, basis))
        kept.push_back(t);
    return Poly::from_terms(f.ring(), std::move(kept));
  }
  // Pending terms ordered largest first; each step touches |g| entries.
  std::map<Monomial, std::uint32_t, std::greater<>> rest;
  for (const auto &t : f.terms())
    rest.emplace_hint(rest.end(), t.monomial, t.coeff);
  std::vector<Term> remainder;
  while (!rest.empty()) {
    auto head = rest.begin();
    const Monomial m = head->first;
    const std::uint32_t coeff = head->second;
    rest.erase(head);
    const Poly *divisor = nullptr;
    for (const auto &g : basis)
      if (g.leading_monomial().divides(m)) {
        divisor = &g;
        break;
      }
    if (!divisor) {
      remainder.push_back({m, coeff});
      continue;
    }
    auto c = F.mul(coeff, F.inv(divisor->leading_term().coeff));
    auto shift = m / divisor->leading_monomial();
    const auto &gt = divisor->terms();
    for (std::size_t k = 1; k < gt.size(); ++k) {
      auto [it, fresh] = rest.try_emplace(gt[k].monomial * shift, 0);
      it->second = F.sub(it->second, F.mul(c, gt[k].coeff));
      if (it->second == 0)
        rest.erase(it);
    }
  }
  return Poly::from_terms(f.ring(), std::move(remainder));
}

inline Poly s_polynomial(const Poly &f, const Poly &g) {
  const auto &F = f.field();
  auto l = lcm(f.leading_monomial(), g.leading_monomial());
  auto a = f.mul_term(l / f.leading_monomial(), F.inv(f.leading_term().coeff));
  auto b = g.mul_term(l / g.leading_monomial(), F.inv(g.leading_term().coeff));
  return a - b;
}

/// Minimal, fully inter-reduced, monic, sorted ascending by leading monomial.
inline std::vector<Poly> interreduce(std::vector<Poly> G) {
  for (auto &g : G)
    g = g.monic();
  std::sort(G.begin(), G.end(), [](const Poly &a, const Poly &b) {
    return a.leading_monomial() < b.leading_monomial();
  });
  std::vector<Poly> minimal;
  for (auto &g : G) {
    bool redundant = false;
    for (const auto &h : minimal)
      if (h.leading_monomial().divides(g.leading_monomial())) {
        redundant = true;
        break;
      }
    if (!redundant)
      minimal.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i)
        others.push_back(minimal[j]);
    const Term lt = minimal[i].leading_term();
    Poly tail = minimal[i] - Poly::monomial(minimal[i].ring(), lt.monomial, lt.coeff);
    minimal[i] = Poly::monomial(minimal[i].ring(), lt.monomial, 1) +
                 reduce(tail, others);
  }
  return minimal;
}

inline std::vector<Poly> buchberger(std::vector<Poly> G) {
  if (G.empty())
    return G;
  const auto ring = G.front().ring();
  for (const auto &g : G)
    if (g.is_constant())
      return {Poly::constant(ring, 1)};
  if (all_monomial(G))
    return interreduce(std::move(G));
  for (auto &g : G)
    g = g.monic();

  // Normal selection strategy: smallest lcm degree first, ties broken by the
  // pair's indices.
  using PairKey = std::tuple<std::uint64_t, std::size_t, std::size_t>;
  std::set<PairKey> pairs;
  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto &a = G[i].leading_monomial();
      const auto &b = G[k].leading_monomial();
      if (coprime(a, b))
        continue;
      pairs.emplace(lcm(a, b).degree(), i, k);
    }
  };
  for (std::size_t k = 1; k < G.size(); ++k)
    add_pairs(k);

  while (!pairs.empty()) {
    auto [deg, i, j] = *pairs.begin();
    pairs.erase(pairs.begin());
    Poly h = reduce(s_polynomial(G[i], G[j]), G);
    if (h.is_zero())
      continue;
    if (h.is_constant())
      return {Poly::constant(ring, 1)};
    G.push_back(h.monic());
    add_pairs(G.size() - 1);
  }
  return interreduce(std::move(G));
}

} // namespace detail

/// Returns `I` with its reduced grevlex Groebner basis filled in.
inline Ideal groebner_basis(const Ideal &I) {
  if (I.has_basis())
    return I;
  Ideal r = I;
  r.gb_ = detail::buchberger(I.generators());
  return r;
}

/// Remainder of f modulo I; zero iff f is in I.
inline Poly normal_form(const Poly &f, const Ideal &I) {
  if (!same_ring(f.ring(), I.ring()))
    throw PreconditionError("normal_form: ring mismatch");
  if (I.has_basis())
    return detail::reduce(f, I.basis());
  return detail::reduce(f, groebner_basis(I).basis());
}

inline bool contains(const Poly &f, const Ideal &I) {
  if (!same_ring(f.ring(), I.ring()))
    throw PreconditionError("contains: ring mismatch");
  if (I.is_monomial()) {
    // Divisibility against the generators directly; no basis needed.
    for (const auto &t : f.terms())
      if (!detail::monomial_in(t.monomial, I.generators()))
        return false;
    return true;
  }
  return normal_form(f, I).is_zero();
}

inline bool ideal_leq(const Ideal &I, const Ideal &J) {
  if (!same_ring(I.ring(), J.ring()))
    throw PreconditionError("ideal comparison across different rings");
  Ideal Jb = groebner_basis(J);
  for (const auto &g : I.generators())
    if (!normal_form(g, Jb).is_zero())
      return false;
  return true;
}

inline bool ideal_eq(const Ideal &I, const Ideal &J) {
  if (!same_ring(I.ring(), J.ring()))
    throw PreconditionError("ideal comparison across different rings");
  return groebner_basis(I).basis() == groebner_basis(J).basis();
}

inline Ideal ideal_sum(const Ideal &I, const Ideal &J) {
  if (!same_ring(I.ring(), J.ring()))
    throw PreconditionError("ideal sum across different rings");
  auto gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return Ideal(I.ring(), std::move(gens));
}

inline Ideal ideal_product(const Ideal &I, const Ideal &J) {
  if (!same_ring(I.ring(), J.ring()))
    throw PreconditionError("ideal product across different rings");
  std::vector<Poly> gens;
  for (const auto &a : I.generators())
    for (const auto &b : J.generators()) {
      auto ab = a * b;
      if (std::find(gens.begin(), gens.end(), ab) == gens.end())
        gens.push_back(std::move(ab));
    }
  return Ideal(I.ring(), std::move(gens));
}

/// Ordinary power I^r = I * ... * I (r >= 1).
inline Ideal ideal_power(const Ideal &I, std::uint32_t r) {
  if (r == 0)
    throw PreconditionError("ideal_power needs r >= 1");
  Ideal acc = I;
  for (std::uint32_t k = 1; k < r; ++k)
    acc = ideal_product(acc, I);
  return acc;
}

/// f in rad(J), decided by 1 in (J, 1 - t f) over R[t].
inline bool radical_member(const Poly &f, const Ideal &J) {
  if (!same_ring(f.ring(), J.ring()))
    throw PreconditionError("radical_member: ring mismatch");
  // The radical of a monomial ideal is generated by the squarefree parts of
  // its generators.
  if (J.is_monomial()) {
    std::vector<Poly> supports;
    for (const auto &g : J.generators()) {
      auto e = g.terms().front().monomial.exponents();
      for (auto &a : e)
        a = a ? 1 : 0;
      supports.push_back(Poly::monomial(J.ring(), Monomial(std::move(e)), 1));
    }
    return contains(f, Ideal(J.ring(), std::move(supports)));
  }
  const auto &ring = *J.ring();
  auto vars = ring.variables;
  std::string fresh = "_t";
  while (std::find(vars.begin(), vars.end(), fresh) != vars.end())
    fresh += '_';
  vars.push_back(fresh);
  auto ext = make_ring(ring.characteristic(), vars);
  auto lift = [&](const Poly &g) {
    std::vector<Term> terms;
    for (const auto &t : g.terms()) {
      auto e = t.monomial.exponents();
      e.push_back(0);
      terms.push_back({Monomial(std::move(e)), t.coeff});
    }
    return Poly::from_terms(ext, std::move(terms));
  };
  std::vector<Poly> gens;
  for (const auto &g : J.generators())
    gens.push_back(lift(g));
  auto t = Poly::variable(ext, ext->nvars() - 1);
  gens.push_back(Poly::constant(ext, 1) - t * lift(f));
  return groebner_basis(Ideal(ext, std::move(gens))).is_unit();
}

/// f^n reduced modulo I, computing in R/I throughout so intermediate
/// polynomials never exceed the size of normal forms.
inline Poly pow_mod(const Poly &f, std::uint64_t n, const Ideal &I,
                    const Budget &budget = {}) {
  Ideal B = groebner_basis(I);
  Poly result = normal_form(Poly::constant(f.ring(), 1), B);
  Poly base = normal_form(f, B);
  while (n) {
    if (n & 1) {
      result = normal_form(result * base, B);
      budget.check(result);
    }
    n >>= 1;
    if (!n || base.is_zero())
      break;
    base = normal_form(base * base, B);
    budget.check(base);
  }
  if (n && base.is_zero())
    return Poly(f.ring());
  return result;
}

} // namespace fthresh
