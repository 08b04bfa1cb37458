#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fthresh/error.hpp"
#include "fthresh/frobenius.hpp"
#include "fthresh/groebner.hpp"
#include "fthresh/rational.hpp"
#include "fthresh/thresholds.hpp"

namespace fthresh {

struct TestIdealOptions {
  /// Consecutive equal chain members required (beyond the first) to accept.
  unsigned window = 2;
  /// Highest Frobenius level the chain may reach.
  unsigned max_e = 6;
  Budget budget;
};

/// One member J_e = (f^{floor(t p^e) + 1})^{[1/p^e]} of the ascending chain.
struct ChainLink {
  unsigned level;
  std::uint64_t exponent;
  Ideal ideal;
};

struct TestIdealResult {
  Ideal ideal;
  unsigned level = 0;
  std::vector<ChainLink> chain;
};

namespace detail {

/// k when den(t) = p^k, nothing otherwise.
inline std::optional<unsigned> p_power_level(const PRational &t, std::uint32_t p) {
  BigInt d = t.denominator();
  unsigned k = 0;
  while (d % p == 0) {
    d /= p;
    ++k;
  }
  if (d != 1)
    return std::nullopt;
  return k;
}

inline std::uint64_t to_u64(const BigInt &v) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw ResourceError("exponent " + v.str() + " does not fit in 64 bits");
  return v.convert_to<std::uint64_t>();
}

inline std::string describe_chain(const std::vector<ChainLink> &chain) {
  std::string out;
  for (const auto &link : chain)
    out += "\n  e=" + std::to_string(link.level) + " exponent=" +
           std::to_string(link.exponent) + " ideal=" + link.ideal.to_string();
  return out;
}

} // namespace detail

/// tau(f^t) as the stable value of J_e = (f^{floor(t p^e)+1})^{[1/p^e]}.
///
/// The "+1" makes the exponent strictly exceed t p^e, so the result is
/// right-continuous in t. The chain is non-decreasing in e. When t = a/p^k
/// the chain is bounded by (f^a)^{[1/p^k]} and stops as soon as it reaches
/// that ideal; otherwise it stops after `window` further equal members.
inline TestIdealResult test_ideal_chain(const Poly &f, const PRational &t,
                                        const TestIdealOptions &opts = {}) {
  if (f.is_zero())
    throw PreconditionError("test_ideal: f must be nonzero");
  if (t < PRational(0))
    throw PreconditionError("test_ideal: t must be >= 0");
  const auto p = f.ring()->characteristic();
  const auto grid = detail::p_power_level(t, p);

  std::optional<Ideal> ceiling;
  unsigned start = 1;
  if (grid) {
    start = std::max(*grid, 1u);
    FrobeniusLevel level(p, *grid);
    auto a = detail::to_u64((t * PRational(BigInt(level.q()), 1)).floor());
    ceiling = eth_root_of_power(f, a, level, opts.budget);
  }

  TestIdealResult result{Ideal(f.ring()), 0, {}};
  for (unsigned e = start;; ++e) {
    if (e > opts.max_e)
      throw ResourceError("test ideal chain for t = " + t.to_string() +
                          " did not stabilize by level " +
                          std::to_string(opts.max_e) + "; partial chain:" +
                          detail::describe_chain(result.chain));
    FrobeniusLevel level(p, e);
    auto N = detail::to_u64((t * PRational(BigInt(level.q()), 1)).floor() + 1);
    Ideal J = eth_root_of_power(f, N, level, opts.budget);
    if (!result.chain.empty() && !ideal_leq(result.chain.back().ideal, J))
      throw InvariantError("test ideal chain is not ascending at level " +
                           std::to_string(e));
    result.chain.push_back({e, N, J});

    bool done = false;
    if (ceiling) {
      done = ideal_eq(J, *ceiling);
    } else if (result.chain.size() > opts.window) {
      done = true;
      for (std::size_t k = 1; k <= opts.window; ++k)
        done = done && ideal_eq(result.chain[result.chain.size() - 1 - k].ideal, J);
    }
    if (done) {
      const auto &stable = ceiling ? result.chain.back()
                                   : result.chain[result.chain.size() - 1 - opts.window];
      result.ideal = stable.ideal;
      result.level = stable.level;
      return result;
    }
  }
}

inline Ideal test_ideal(const Poly &f, const PRational &t,
                        const TestIdealOptions &opts = {}) {
  return test_ideal_chain(f, t, opts).ideal;
}

/// tau changes somewhere in (left, right].
struct Jump {
  PRational left;
  PRational right;
  PRational guess;
};

struct TestIdealProfile {
  Poly f;
  unsigned level = 0;
  std::vector<std::pair<PRational, Ideal>> entries;
  std::vector<Jump> jumps;
};

/// tau(f^t) on the grid {a/p^E : 0 <= a <= t_max p^E}; a jump is recorded on
/// (a/p^E, (a+1)/p^E] whenever consecutive entries differ.
inline TestIdealProfile jumping_numbers(const Poly &f, const PRational &t_max,
                                        unsigned E,
                                        const TestIdealOptions &opts = {}) {
  if (f.is_zero())
    throw PreconditionError("jumping_numbers: f must be nonzero");
  if (t_max < PRational(0))
    throw PreconditionError("jumping_numbers: t_max must be >= 0");
  const auto p = f.ring()->characteristic();
  FrobeniusLevel level(p, E);
  const PRational step(1, BigInt(level.q()));
  auto last = detail::to_u64((t_max * PRational(BigInt(level.q()), 1)).floor());

  TestIdealProfile profile{f, E, {}, {}};
  for (std::uint64_t a = 0; a <= last; ++a) {
    PRational t(BigInt(a), BigInt(level.q()));
    Ideal tau = test_ideal(f, t, opts);
    if (a == 0 && !tau.is_unit())
      throw InvariantError("tau(f^0) is not the unit ideal");
    if (!profile.entries.empty()) {
      const auto &[prev_t, prev] = profile.entries.back();
      if (!ideal_leq(tau, prev))
        throw InvariantError("test ideals not anti-monotone at t = " +
                             t.to_string());
      if (!ideal_eq(tau, prev))
        profile.jumps.push_back({prev_t, t, guess_threshold(prev_t, t, p)});
    }
    profile.entries.emplace_back(std::move(t), std::move(tau));
  }
  return profile;
}

struct VerifyOptions {
  TestIdealOptions test_ideal;
  ThresholdOptions threshold;
  /// Add tau(f^alpha) at the right end of every detected jump to the family.
  bool include_jump_ideals = false;
  /// Retry once at E+1 when a check fails at E.
  bool retry = true;
};

enum class FamilyStatus { ok, degenerate, not_in_radical };

struct FamilyEntry {
  Ideal ideal;
  FamilyStatus status = FamilyStatus::ok;
  std::optional<ThresholdEstimate> estimate;
  /// tau(f^upper) ⊆ J (group a).
  bool contains_test_ideal = false;
  /// The estimate overlaps a jump interval or lies beyond t_max (group c,
  /// threshold direction).
  bool matched_jump = false;
};

struct CheckGroup {
  bool passed = true;
  std::vector<std::string> witnesses;

  void record(bool ok, std::string witness) {
    passed = passed && ok;
    witnesses.push_back((ok ? "ok: " : "FAIL: ") + std::move(witness));
  }
};

struct CorrespondenceReport {
  unsigned requested_level = 0;
  unsigned level = 0;
  bool retried = false;
  TestIdealProfile profile;
  std::vector<FamilyEntry> family;
  CheckGroup containment;   // (a) tau(f^{c^J}) ⊆ J
  CheckGroup test_ideal_threshold; // (b) c^{tau(f^alpha)}(f) <= alpha
  CheckGroup jumps_are_thresholds; // (c) both directions of the set equality

  bool passed() const {
    return containment.passed && test_ideal_threshold.passed &&
           jumps_are_thresholds.passed;
  }
};

namespace detail {

inline bool overlaps(const PRational &lo1, const PRational &hi1,
                     const PRational &lo2, const PRational &hi2,
                     const PRational &tol) {
  return lo1 <= hi2 + tol && lo2 <= hi1 + tol;
}

inline CorrespondenceReport verify_at(const Poly &f,
                                      const std::vector<Ideal> &family_in,
                                      const PRational &t_max, unsigned E,
                                      const VerifyOptions &opts) {
  const auto p = f.ring()->characteristic();
  const FrobeniusLevel level(p, E);
  const PRational tol(1, BigInt(level.q()));
  ThresholdOptions th = opts.threshold;
  th.check_radical = false;

  CorrespondenceReport report{0, E, false,
                              jumping_numbers(f, t_max, E, opts.test_ideal),
                              {}, {}, {}, {}};
  report.level = E;

  // Threshold of f with respect to a test ideal, cached by reduced basis.
  std::map<std::string, ThresholdEstimate> cache;
  auto estimate_for = [&](const Ideal &J) {
    auto key = groebner_basis(J).to_string();
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, estimate_from_nu(nu(f, J, level, th), level)).first;
    return it->second;
  };

  std::vector<Ideal> family = family_in;
  if (opts.include_jump_ideals)
    for (const auto &jump : report.profile.jumps) {
      Ideal tau = test_ideal(f, jump.right, opts.test_ideal);
      bool seen = false;
      for (const auto &J : family)
        seen = seen || (same_ring(J.ring(), tau.ring()) && ideal_eq(J, tau));
      if (!seen)
        family.push_back(tau);
    }

  // (a) tau(f^u) ⊆ J where u is the upper end of the c^J(f) estimate.
  for (const auto &J : family) {
    FamilyEntry entry{groebner_basis(J), FamilyStatus::ok, std::nullopt};
    if (!radical_member(f, J)) {
      entry.status = FamilyStatus::not_in_radical;
      report.family.push_back(std::move(entry));
      continue;
    }
    auto est = estimate_from_nu(nu(f, J, level, th), level);
    if (est.degenerate)
      entry.status = FamilyStatus::degenerate;
    Ideal tau = test_ideal(f, est.upper, opts.test_ideal);
    entry.contains_test_ideal = ideal_leq(tau, J);
    report.containment.record(entry.contains_test_ideal,
                              "J=" + entry.ideal.to_string() + " c in [" +
                                  est.lower.to_string() + ", " +
                                  est.upper.to_string() + "] tau(f^" +
                                  est.upper.to_string() + ")=" + tau.to_string());
    entry.estimate = est;
    report.family.push_back(std::move(entry));
  }

  // (b) every grid alpha: c^{tau(f^alpha)}(f) <= alpha, up to one grid step.
  for (const auto &[alpha, tau] : report.profile.entries) {
    auto est = estimate_for(tau);
    bool ok = est.upper <= alpha + tol;
    report.test_ideal_threshold.record(
        ok, "alpha=" + alpha.to_string() + " tau=" + tau.to_string() +
                " c in [" + est.lower.to_string() + ", " +
                est.upper.to_string() + "]");
  }

  // (c) jumping numbers are thresholds ...
  for (const auto &jump : report.profile.jumps) {
    Ideal tau = report.profile.entries.back().second;
    for (const auto &[t, ideal] : report.profile.entries)
      if (t == jump.right)
        tau = ideal;
    auto est = estimate_for(tau);
    bool ok = overlaps(est.lower, est.upper, jump.left, jump.right, tol);
    report.jumps_are_thresholds.record(
        ok, "jump in (" + jump.left.to_string() + ", " + jump.right.to_string() +
                "] vs c^tau in [" + est.lower.to_string() + ", " +
                est.upper.to_string() + "]");
  }
  // ... and thresholds are jumping numbers.
  for (auto &entry : report.family) {
    if (entry.status != FamilyStatus::ok)
      continue;
    const auto &est = *entry.estimate;
    bool ok = est.lower > t_max;
    for (const auto &jump : report.profile.jumps)
      ok = ok || overlaps(est.lower, est.upper, jump.left, jump.right, tol);
    entry.matched_jump = ok;
    report.jumps_are_thresholds.record(
        ok, "c^J for J=" + entry.ideal.to_string() + " in [" +
                est.lower.to_string() + ", " + est.upper.to_string() +
                "] matches a jump or exceeds t_max");
  }
  return report;
}

} // namespace detail

/// Checks, at grid resolution 1/p^E, that thresholds and jumping numbers of f
/// determine each other:
///  (a) tau(f^{c^J(f)}) ⊆ J for each J in the family,
///  (b) c^{tau(f^alpha)}(f) <= alpha at every grid point,
///  (c) every jump interval carries a threshold and every family threshold
///      falls in a jump interval (or beyond t_max).
/// Ideals with f outside their radical are reported and skipped; J = (1) is
/// kept for (a) only.
inline CorrespondenceReport verify_correspondence(const Poly &f,
                                                  const std::vector<Ideal> &family,
                                                  const PRational &t_max,
                                                  unsigned E,
                                                  const VerifyOptions &opts = {}) {
  if (f.is_zero())
    throw PreconditionError("verify_correspondence: f must be nonzero");
  for (const auto &J : family)
    if (!same_ring(J.ring(), f.ring()))
      throw PreconditionError("verify_correspondence: ring mismatch");
  auto report = detail::verify_at(f, family, t_max, E, opts);
  report.requested_level = E;
  if (!report.passed() && opts.retry) {
    report = detail::verify_at(f, family, t_max, E + 1, opts);
    report.requested_level = E;
    report.retried = true;
  }
  return report;
}

} // namespace fthresh
