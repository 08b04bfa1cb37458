#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/error.hpp"
#include "fthresh/frobenius.hpp"
#include "fthresh/groebner.hpp"
#include "fthresh/rational.hpp"

namespace fthresh {

struct ThresholdOptions {
  Budget budget;
  /// Largest exponent n tried before the search gives up.
  std::uint64_t max_exponent = std::uint64_t{1} << 32;
  bool check_radical = true;
};

/// nu_e^J(f). `degenerate` marks J = (1), where no power of f lies outside
/// J^{[q]} and the value 0 is a convention.
struct NuResult {
  std::uint64_t value = 0;
  bool degenerate = false;
};

/// Bounds nu/q <= c^J(f) <= (nu+1)/q at one Frobenius level.
struct ThresholdEstimate {
  PRational lower;
  PRational upper;
  unsigned level = 0;
  std::uint64_t nu = 0;
  bool degenerate = false;
};

namespace detail {

inline void require_radical(const Poly &f, const Ideal &J) {
  if (!radical_member(f, J))
    throw PreconditionError(
        "f = " + f.to_string() + " is not in the radical of J = " +
       J.to_string() + " (witness: 1 is not in (J, 1 - t*f)); nu_e is unbounded");
}

/// max{n : f^n not in I} given I as a reduced basis; exponential search over
/// f^{2^k} followed by a greedy descent through the bits.
inline std::uint64_t largest_power_outside(const Poly &f, const Ideal &ideal,
                                           const ThresholdOptions &opts) {
  const Ideal I = groebner_basis(ideal);
  std::vector<Poly> ladder; // ladder[k] = f^{2^k} mod I
  Poly current = normal_form(f, I);
  if (current.is_zero())
    return 0;
  for (;;) {
    ladder.push_back(current);
    std::uint64_t next = std::uint64_t{1} << ladder.size();
    if (next > opts.max_exponent)
      throw ResourceError("nu search exceeded exponent budget " +
                          std::to_string(opts.max_exponent) +
                          " without reaching J^[q]; f is likely not in rad(J)");
    current = normal_form(current * current, I);
    opts.budget.check(current);
    if (current.is_zero())
      break;
  }
  // f^{2^K} is outside, f^{2^{K+1}} inside; descend through lower bits.
  const std::size_t K = ladder.size() - 1;
  std::uint64_t n = std::uint64_t{1} << K;
  Poly value = ladder[K];
  for (std::size_t j = K; j-- > 0;) {
    Poly candidate = normal_form(value * ladder[j], I);
    opts.budget.check(candidate);
    if (!candidate.is_zero()) {
      value = std::move(candidate);
      n += std::uint64_t{1} << j;
    }
  }
  return n;
}

} // namespace detail

/// nu_e^J(f) = max{n : f^n not in J^{[p^e]}}.
inline NuResult nu(const Poly &f, const Ideal &J, const FrobeniusLevel &level,
                   const ThresholdOptions &opts = {}) {
  if (!same_ring(f.ring(), J.ring()))
    throw PreconditionError("nu: ring mismatch");
  if (opts.check_radical)
    detail::require_radical(f, J);
  Ideal Jb = groebner_basis(J);
  if (Jb.is_unit())
    return {0, true};
  Ideal bracket = bracket_power(Jb, level);
  return {detail::largest_power_outside(f, bracket, opts), false};
}

inline ThresholdEstimate estimate_from_nu(const NuResult &n,
                                          const FrobeniusLevel &level) {
  ThresholdEstimate est;
  est.level = level.e();
  est.nu = n.value;
  est.degenerate = n.degenerate;
  est.lower = PRational(BigInt(n.value), BigInt(level.q()));
  est.upper = PRational(BigInt(n.value) + 1, BigInt(level.q()));
  return est;
}

/// Estimates at levels 1..max_e; checks nesting and nu_{e+1} - p nu_e in
/// [0, p-1] between consecutive levels.
inline std::vector<ThresholdEstimate>
threshold_series(const Poly &f, const Ideal &J, unsigned max_e,
                 const ThresholdOptions &opts = {}) {
  if (max_e == 0)
    throw PreconditionError("threshold_series needs max_e >= 1");
  if (opts.check_radical)
    detail::require_radical(f, J);
  ThresholdOptions inner = opts;
  inner.check_radical = false;
  std::vector<ThresholdEstimate> series;
  const auto p = f.ring()->characteristic();
  for (unsigned e = 1; e <= max_e; ++e) {
    FrobeniusLevel level(p, e);
    auto est = estimate_from_nu(nu(f, J, level, inner), level);
    for (const auto &prev : series)
      if (prev.lower > est.lower || est.upper > prev.upper)
        throw InvariantError("threshold intervals not nested at levels " +
                             std::to_string(prev.level) + " and " +
                             std::to_string(e));
    if (!series.empty()) {
      auto base = std::uint64_t{p} * series.back().nu;
      if (est.nu < base || est.nu > base + p - 1)
        throw InvariantError("nu_{e+1} - p*nu_e outside [0, p-1] at level " +
                             std::to_string(e));
    }
    series.push_back(std::move(est));
  }
  return series;
}

inline ThresholdEstimate threshold_interval(const Poly &f, const Ideal &J,
                                            unsigned max_e,
                                            const ThresholdOptions &opts = {}) {
  return threshold_series(f, J, max_e, opts).back();
}

/// nu_e^J(f^r) == floor(nu_e^J(f) / r).
inline bool scaling_check(const Poly &f, const Ideal &J, std::uint32_t r,
                          const FrobeniusLevel &level,
                          const ThresholdOptions &opts = {}) {
  if (r == 0)
    throw PreconditionError("scaling_check needs r >= 1");
  auto base = nu(f, J, level, opts).value;
  auto scaled = nu(poly_pow(f, r, opts.budget), J, level, opts).value;
  return scaled == base / r;
}

/// For J ⊆ I: nu_e^I(f) <= nu_e^J(f).
inline bool monotonicity_check(const Poly &f, const Ideal &J, const Ideal &I,
                               const FrobeniusLevel &level,
                               const ThresholdOptions &opts = {}) {
  if (!ideal_leq(J, I))
    throw PreconditionError("monotonicity_check: J = " + J.to_string() +
                            " is not contained in I = " + I.to_string());
  return nu(f, I, level, opts).value <= nu(f, J, level, opts).value;
}

/// Candidate exact value for a threshold known to lie in (lower, upper].
///
/// Thresholds are rational with eventually periodic base-p expansions, i.e.
/// of the form a / (p^s (p^k - 1)) or a / p^s. Candidates are ranked by that
/// denominator, smallest first, and the first one inside the interval wins.
/// This is a heuristic label and never feeds back into a computation.
inline PRational guess_threshold(const PRational &lower, const PRational &upper,
                                 std::uint32_t p) {
  if (!(lower < upper))
    throw PreconditionError("guess_threshold needs lower < upper");
  // upper has a p-power denominator at every level we produce, so D = that
  // denominator always succeeds; bound the search by it.
  BigInt limit = upper.denominator();
  if (lower.denominator() > limit)
    limit = lower.denominator();
  std::vector<BigInt> denominators;
  for (BigInt ps = 1; ps <= limit; ps *= p) {
    denominators.push_back(ps);
    for (BigInt pk = p; ps * (pk - 1) <= limit; pk *= p)
      denominators.push_back(ps * (pk - 1));
  }
  std::sort(denominators.begin(), denominators.end());
  denominators.erase(std::unique(denominators.begin(), denominators.end()),
                     denominators.end());
  for (const auto &D : denominators) {
    BigInt k = (lower * PRational(D, 1)).floor() + 1;
    PRational candidate(k, D);
    if (candidate <= upper)
      return candidate;
  }
  return upper;
}

struct FptResult {
  ThresholdEstimate estimate;
  std::vector<ThresholdEstimate> series;
  PRational guess;
};

/// F-pure threshold c^m(f), m the homogeneous maximal ideal.
inline FptResult fpt(const Poly &f, unsigned max_e,
                     const ThresholdOptions &opts = {}) {
  if (f.is_zero())
    throw PreconditionError("fpt: f must be nonzero");
  if (f.constant_term() != 0)
    throw PreconditionError("fpt: f does not vanish at the origin");
  FptResult r;
  r.series = threshold_series(f, Ideal::maximal(f.ring()), max_e, opts);
  r.estimate = r.series.back();
  r.guess = guess_threshold(r.estimate.lower, r.estimate.upper,
                            f.ring()->characteristic());
  return r;
}

} // namespace fthresh
