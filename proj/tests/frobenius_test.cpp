#include <random>

#include <gtest/gtest.h>

#include "fthresh/fthresh.hpp"
#include "oracle.hpp"

using namespace fthresh;

namespace {

Ideal ideal(const char *gens, const RingPtr &R) {
  return Ideal(R, parse_generators(gens, R));
}

bool same(const Ideal &a, const Ideal &b) { return ideal_eq(a, b); }

Ideal monomial_ideal(const RingPtr &R, const std::vector<oracle::Exps> &gens) {
  std::vector<Poly> polys;
  for (const auto &a : gens)
    polys.push_back(Poly::monomial(R, Monomial(a), 1));
  return Ideal(R, polys);
}

Ideal random_ideal(const RingPtr &R, std::mt19937_64 &rng, int max_gens,
                   std::uint32_t max_exp) {
  std::uniform_int_distribution<int> count(1, max_gens);
  std::vector<Poly> gens;
  for (int i = count(rng); i > 0; --i)
    gens.push_back(oracle::random_poly(R, rng, 3, max_exp));
  return Ideal(R, gens);
}

} // namespace

TEST(FrobeniusLevel, PowersAndOverflow) {
  EXPECT_EQ(FrobeniusLevel(7, 0).q(), 1u);
  EXPECT_EQ(FrobeniusLevel(7, 2).q(), 49u);
  EXPECT_EQ(FrobeniusLevel(2, 31).q(), std::uint64_t{1} << 31);
  EXPECT_THROW(FrobeniusLevel(2, 32), ResourceError);
  EXPECT_THROW(FrobeniusLevel(65521, 3), ResourceError);
}

TEST(BracketPower, Examples) {
  auto R7 = make_ring(7, {"x", "y"});
  EXPECT_TRUE(same(bracket_power(ideal("x, y", R7), FrobeniusLevel(7, 1)),
                   ideal("x^7, y^7", R7)));
  auto R5 = make_ring(5, {"x", "y"});
  EXPECT_TRUE(same(bracket_power(ideal("x+y", R5), FrobeniusLevel(5, 1)),
                   ideal("x^5+y^5", R5)));
  auto R3 = make_ring(3, {"x", "y"});
  auto m2 = ideal_power(Ideal::maximal(R3), 2);
  EXPECT_TRUE(same(bracket_power(m2, FrobeniusLevel(3, 1)),
                   ideal("x^6, x^3*y^3, y^6", R3)));
}

TEST(BracketPower, CarriesTheReducedBasis) {
  auto R = make_ring(5, {"x", "y"});
  auto B = groebner_basis(ideal("x^2+y^3, x*y", R));
  auto Bq = bracket_power(B, FrobeniusLevel(5, 1));
  ASSERT_TRUE(Bq.has_basis());
  EXPECT_EQ(Bq.basis(), groebner_basis(Ideal(R, Bq.generators())).basis());
}

TEST(EthRoot, Examples) {
  auto R7 = make_ring(7, {"x", "y"});
  FrobeniusLevel l7(7, 1);
  EXPECT_TRUE(same(eth_root(ideal("x^7", R7), l7), ideal("x", R7)));
  EXPECT_TRUE(eth_root(ideal("x^6*y^6", R7), l7).is_unit());

  auto R5 = make_ring(5, {"x"});
  FrobeniusLevel l25(5, 2);
  EXPECT_TRUE(eth_root(ideal("x^13", R5), l25).is_unit());
  EXPECT_TRUE(same(eth_root(ideal("x^26", R5), l25), ideal("x", R5)));
}

TEST(EthRoot, NonMonomialGenerator) {
  // x^7 + x y^8 = x^7 * 1 + y^7 * (x y), so the components are x and y.
  auto R = make_ring(7, {"x", "y"});
  auto root = eth_root(ideal("x^7 + x*y^8", R), FrobeniusLevel(7, 1));
  EXPECT_TRUE(same(root, ideal("x, y", R)));
}

TEST(EthRoot, LevelZeroIsIdentity) {
  auto R = make_ring(3, {"x", "y"});
  auto I = ideal("x^2+y, x*y", R);
  EXPECT_TRUE(same(eth_root(I, FrobeniusLevel(3, 0)), I));
}

TEST(EthRootOfPower, AgreesWithDirectRoot) {
  auto R = make_ring(5, {"x", "y"});
  auto f = parse_poly("x^2+y^3+x*y", R);
  for (unsigned e = 1; e <= 2; ++e) {
    FrobeniusLevel level(5, e);
    for (std::uint64_t N : {1, 4, 7, 13, 26, 31}) {
      auto direct = eth_root(Ideal(R, {oracle::naive_pow(f, N)}), level);
      ASSERT_TRUE(same(eth_root_of_power(f, N, level), direct)) << e << " " << N;
    }
  }
}

TEST(Fedder, Examples) {
  auto R5 = make_ring(5, {"x", "y"});
  EXPECT_TRUE(fedder_fpure(parse_poly("x*y", R5)));
  for (std::uint32_t p : {2, 3, 5, 7, 11}) {
    auto R = make_ring(p, {"x", "y"});
    EXPECT_TRUE(fedder_fpure(parse_poly("x", R))) << p;
  }
  auto R7 = make_ring(7, {"x", "y"});
  auto cusp = parse_poly("x^2+y^3", R7);
  EXPECT_FALSE(fedder_fpure(cusp));
  // Oracle: every term of (x^2+y^3)^6 lies in (x^7, y^7).
  EXPECT_TRUE(oracle::in_monomial_ideal(oracle::naive_pow(cusp, 6), {{7, 0}, {0, 7}}));
}

TEST(Fedder, Preconditions) {
  auto R = make_ring(5, {"x", "y"});
  EXPECT_THROW(fedder_fpure(parse_poly("x+1", R)), PreconditionError);
  EXPECT_THROW(fedder_fpure(Poly(R)), PreconditionError);
}

TEST(SplittingTest, Examples) {
  for (std::uint32_t p : {2, 3, 5}) {
    auto R = make_ring(p, {"x", "y"});
    auto x = parse_poly("x", R);
    for (unsigned e = 1; e <= 3; ++e) {
      FrobeniusLevel level(p, e);
      EXPECT_TRUE(splitting_test(x, level.q() - 1, level));
      EXPECT_FALSE(splitting_test(x, level.q(), level));
    }
  }
  auto R7 = make_ring(7, {"x", "y"});
  auto cusp = parse_poly("x^2+y^3", R7);
  FrobeniusLevel l(7, 1);
  EXPECT_TRUE(splitting_test(cusp, 5, l));
  EXPECT_FALSE(splitting_test(cusp, 6, l));
  std::vector<oracle::Exps> m7{{7, 0}, {0, 7}};
  EXPECT_FALSE(oracle::in_monomial_ideal(oracle::naive_pow(cusp, 5), m7));
  EXPECT_TRUE(oracle::in_monomial_ideal(oracle::naive_pow(cusp, 6), m7));
}

class FrobeniusProperty : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(FrobeniusProperty, GaloisConnection) {
  const auto p = GetParam();
  auto R = make_ring(p, {"x", "y"});
  std::mt19937_64 rng(p * 17);
  for (int trial = 0; trial < 40; ++trial) {
    FrobeniusLevel level(p, 1 + trial % 2);
    auto I = random_ideal(R, rng, 3, 3 * p);
    auto root = eth_root(I, level);
    ASSERT_TRUE(root_postcondition_holds(I, root, level));

    auto J = random_ideal(R, rng, 3, 3);
    ASSERT_TRUE(same(eth_root(bracket_power(J, level), level), J)) << J.to_string();
  }
}

TEST_P(FrobeniusProperty, RootIsSmallest) {
  // Any K with I ⊆ K^{[q]} contains the root; probe with the root's own
  // proper sub-ideals generated by dropping one generator.
  const auto p = GetParam();
  auto R = make_ring(p, {"x", "y"});
  std::mt19937_64 rng(p * 23);
  FrobeniusLevel level(p, 1);
  for (int trial = 0; trial < 30; ++trial) {
    auto I = random_ideal(R, rng, 2, 2 * p + 1);
    auto root = eth_root(I, level);
    const auto &G = root.basis();
    for (std::size_t drop = 0; drop < G.size() && G.size() > 1; ++drop) {
      std::vector<Poly> fewer;
      for (std::size_t i = 0; i < G.size(); ++i)
        if (i != drop)
          fewer.push_back(G[i]);
      Ideal K(R, fewer);
      if (!ideal_eq(K, root)) {
        ASSERT_FALSE(root_postcondition_holds(I, groebner_basis(K), level));
      }
    }
  }
}

TEST_P(FrobeniusProperty, Composition) {
  const auto p = GetParam();
  auto R = make_ring(p, {"x", "y"});
  std::mt19937_64 rng(p * 29);
  for (int trial = 0; trial < 30; ++trial) {
    auto I = random_ideal(R, rng, 2, p * p + 3);
    FrobeniusLevel one(p, 1), two(p, 2);
    ASSERT_TRUE(same(eth_root(eth_root(I, one), one), eth_root(I, two)));
  }
}

TEST_P(FrobeniusProperty, Additivity) {
  const auto p = GetParam();
  auto R = make_ring(p, {"x", "y", "z"});
  std::mt19937_64 rng(p * 31);
  for (int trial = 0; trial < 30; ++trial) {
    FrobeniusLevel level(p, 1 + trial % 2);
    auto I = random_ideal(R, rng, 2, 2 * p);
    auto J = random_ideal(R, rng, 2, 2 * p);
    ASSERT_TRUE(same(eth_root(ideal_sum(I, J), level),
                     ideal_sum(eth_root(I, level), eth_root(J, level))));
  }
}

TEST_P(FrobeniusProperty, MonomialLaw) {
  const auto p = GetParam();
  auto R = make_ring(p, {"x", "y", "z"});
  std::mt19937_64 rng(p * 37);
  std::uniform_int_distribution<std::uint32_t> e(0, 3 * p * p);
  for (int trial = 0; trial < 60; ++trial) {
    FrobeniusLevel level(p, 1 + trial % 3);
    std::vector<oracle::Exps> gens;
    for (int i = 0; i < 3; ++i)
      gens.push_back({e(rng), e(rng), e(rng)});
    auto expected = monomial_ideal(R, oracle::monomial_root(gens, level.q()));
    ASSERT_TRUE(same(eth_root(monomial_ideal(R, gens), level), expected));
  }
}

TEST_P(FrobeniusProperty, RootMatchesBruteDecomposition) {
  const auto p = GetParam();
  auto R = make_ring(p, {"x", "y"});
  std::mt19937_64 rng(p * 41);
  for (int trial = 0; trial < 40; ++trial) {
    FrobeniusLevel level(p, 1 + trial % 2);
    auto g = oracle::random_poly(R, rng, 6, 3 * p);
    auto expected = Ideal(R, oracle::decompose(g, level.q()));
    ASSERT_TRUE(same(eth_root(Ideal(R, {g}), level), expected));
  }
}

TEST_P(FrobeniusProperty, SplittingIsFlatUnderFrobenius) {
  const auto p = GetParam();
  auto R = make_ring(p, {"x", "y"});
  std::mt19937_64 rng(p * 43);
  std::uniform_int_distribution<std::uint64_t> a(0, 3 * p);
  for (int trial = 0; trial < 40; ++trial) {
    auto f = oracle::random_poly(R, rng, 3, 3);
    f = f - Poly::constant(R, f.constant_term());
    if (f.is_zero())
      continue;
    auto k = a(rng);
    FrobeniusLevel l1(p, 1), l2(p, 2);
    bool s1 = splitting_test(f, k, l1);
    ASSERT_EQ(s1, splitting_test(f, p * k, l2)) << f.to_string() << " a=" << k;
    if (s1 && k > 0) {
      ASSERT_TRUE(splitting_test(f, k - 1, l1));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, FrobeniusProperty, ::testing::Values(2, 3, 5, 7));
