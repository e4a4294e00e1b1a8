#include <gtest/gtest.h>

#include <random>

#include "mullat/error.hpp"
#include "mullat/ufactor.hpp"

using namespace mullat;
using namespace mullat::poly;

namespace {

UPoly P(BaseField f, std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UPoly(f, v);
}

// Brute-force irreducibility over F_p: no monic divisor of degree <= d/2.
bool irreducible_fp_bruteforce(const UPoly& f) {
  const long p = static_cast<long>(f.field().p());
  const long d = f.degree();
  for (long k = 1; 2 * k <= d; ++k) {
    std::vector<long> c(k, 0);
    for (;;) {
      std::vector<Rational> coeffs(c.begin(), c.end());
      coeffs.emplace_back(1);
      if ((f % UPoly(f.field(), coeffs)).is_zero()) return false;
      std::size_t i = 0;
      while (i < c.size() && ++c[i] == p) c[i++] = 0;
      if (i == c.size()) break;
    }
  }
  return true;
}

// Rational root test for degree <= 3 integral polynomials.
bool has_rational_root(const UPoly& f) {
  Integer a0 = f.coeff(0).get_num(), an = f.lc().get_num();
  if (a0 == 0) return true;
  for (const auto& r : divisors(abs(a0)))
    for (const auto& s : divisors(abs(an)))
      for (int sign : {1, -1})
        if (f.eval(Rational(sign * r) / s) == 0) return true;
  return false;
}

}  // namespace

TEST(UFactor, SpecExamples) {
  BaseField Q, F2(2);
  auto f = factor(P(Q, {1, 2, 1}));
  ASSERT_EQ(f.factors.size(), 1u);
  EXPECT_EQ(f.factors[0].poly, P(Q, {1, 1}));
  EXPECT_EQ(f.factors[0].multiplicity, 2u);
  auto g = factor(P(F2, {1, 0, 0, 0, 1}));
  ASSERT_EQ(g.factors.size(), 1u);
  EXPECT_EQ(g.factors[0].poly, P(F2, {1, 1}));
  EXPECT_EQ(g.factors[0].multiplicity, 4u);
  EXPECT_THROW(factor(UPoly(Q)), Error);
}

TEST(UFactor, Cyclotomics) {
  BaseField Q;
  // x^12 - 1 has the cyclotomic factors for d | 12: six of them.
  std::vector<Rational> c(13);
  c[0] = -1;
  c[12] = 1;
  auto f = factor(UPoly(Q, c));
  EXPECT_EQ(f.factors.size(), 6u);
  EXPECT_EQ(expand(f), UPoly(Q, c));
}

TEST(UFactor, SwinnertonDyerStaysIrreducible) {
  // x^4 - 10x^2 + 1 splits modulo every prime but not over Q.
  BaseField Q;
  auto f = factor(P(Q, {1, 0, -10, 0, 1}));
  EXPECT_EQ(f.factors.size(), 1u);
}

TEST(UFactor, RandomOverFpRoundTrip) {
  std::mt19937_64 rng(1);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    BaseField F(p);
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t deg = 1 + rng() % 12;
      std::vector<Rational> c(deg + 1);
      for (auto& x : c) x = static_cast<long>(rng() % p);
      c[deg] = 1 + static_cast<long>(rng() % (p - 1));
      UPoly f(F, c);
      auto fac = factor(f);
      EXPECT_EQ(expand(fac), f);
      for (const auto& u : fac.factors) {
        EXPECT_EQ(u.poly.lc(), 1);
        if (u.poly.degree() <= 6) EXPECT_TRUE(irreducible_fp_bruteforce(u.poly)) << to_string(u.poly);
      }
    }
  }
}

TEST(UFactor, RandomOverQRoundTrip) {
  std::mt19937_64 rng(2);
  BaseField Q;
  std::uniform_int_distribution<long> d(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    // Products of random low-degree pieces make factorizations non-trivial.
    UPoly f = UPoly::constant(Q, d(rng) == 0 ? Rational(1) : Rational(2, 3));
    std::size_t pieces = 1 + rng() % 4;
    for (std::size_t i = 0; i < pieces && f.degree() < 12; ++i) {
      std::size_t deg = 1 + rng() % 3;
      std::vector<Rational> c(deg + 1);
      for (auto& x : c) x = d(rng);
      if (c[deg] == 0) c[deg] = 1;
      f = f * UPoly(Q, c);
    }
    auto fac = factor(f);
    EXPECT_EQ(to_string(expand(fac)), to_string(f));
    for (const auto& u : fac.factors) {
      EXPECT_GT(u.poly.lc(), 0);
      if (u.poly.degree() >= 2 && u.poly.degree() <= 3) EXPECT_FALSE(has_rational_root(u.poly)) << to_string(u.poly);
    }
  }
}

TEST(UFactor, RootsAndSquarefree) {
  BaseField Q;
  auto r = roots(P(Q, {-6, 11, -6, 1}));
  EXPECT_EQ(r, (std::vector<Rational>{1, 2, 3}));
  auto sq = squarefree_decomposition(P(Q, {0, 0, 1, 1}));  // x^2 (x + 1)
  ASSERT_EQ(sq.size(), 2u);
  BaseField F3(3);
  EXPECT_EQ(roots(P(F3, {2, 0, 1})), (std::vector<Rational>{1, 2}));
  // x^3 - x over F_3 in char 3: derivative is -1, squarefree.
  EXPECT_EQ(factor(P(F3, {0, 2, 0, 1})).factors.size(), 3u);
  // x^9 + 1 = (x + 1)^9 over F_3.
  auto g = factor(P(F3, {1, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
  ASSERT_EQ(g.factors.size(), 1u);
  EXPECT_EQ(g.factors[0].multiplicity, 9u);
}

TEST(UFactor, LargeCoefficients) {
  BaseField Q;
  // (1000003 x + 999983)(x^2 + 7919)(x - 104729)
  UPoly f = P(Q, {999983, 1000003}) * P(Q, {7919, 0, 1}) * P(Q, {-104729, 1});
  auto fac = factor(f);
  EXPECT_EQ(fac.factors.size(), 3u);
  EXPECT_EQ(expand(fac), f);
}
