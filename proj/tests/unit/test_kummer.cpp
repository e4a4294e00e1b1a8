#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mullat/error.hpp"
#include "mullat/kummer.hpp"
#include "mullat/normal_form.hpp"
#include "oracles.hpp"

using namespace mullat;
using namespace mullat::kummer;
using multfield::parse_element;

namespace {

MultElement el(const std::string& s, std::uint64_t p = 0) { return parse_element(poly::BaseField(p), s); }

// Every E_b chi with E_a chi = 0 mod n, by enumerating chi in (Z/n)^r.
std::set<std::vector<long>> enumerate_realizable(const IntMatrix& ea, const IntMatrix& eb, long n) {
  std::set<std::vector<long>> out;
  const std::size_t r = eb.cols();
  for (const auto& chi : oracle::box(r, n)) {
    bool in_range = true;
    for (const auto& c : chi) in_range = in_range && c >= 0 && c < n;
    if (!in_range) continue;
    bool fixed = true;
    for (std::size_t i = 0; i < ea.rows() && fixed; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < r; ++j) s += ea(i, j) * chi[j];
      fixed = mod(s, Integer(n)) == 0;
    }
    if (!fixed) continue;
    std::vector<long> img;
    for (std::size_t i = 0; i < eb.rows(); ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < r; ++j) s += eb(i, j) * chi[j];
      img.push_back(mod(s, Integer(n)).get_si());
    }
    out.insert(img);
  }
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(Twist, CompatibleAndDeterministic) {
  auto t = Twist::random(3, 42);
  for (long n : {12, 30, 36, 60}) {
    auto tn = t.at(Integer(n));
    for (const auto& d : divisors(Integer(n))) {
      auto td = t.at(d);
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(mod(tn[j], d), td[j]) << n << " " << d;
    }
  }
  EXPECT_EQ(t.at(Integer(1)), (std::vector<Integer>{0, 0, 0}));
  EXPECT_EQ(Twist::random(3, 42).at(Integer(60)), t.at(Integer(60)));
  EXPECT_NE(Twist::random(3, 43).at(Integer(9699690)), t.at(Integer(9699690)));
  auto c = Twist::constant({Integer(5), Integer(-1)});
  EXPECT_EQ(c.at(Integer(4)), (std::vector<Integer>{1, 3}));
  // In characteristic 3 only the prime-to-3 part of the level matters.
  auto t3 = Twist::random(2, 7, 3);
  EXPECT_EQ(t3.at(Integer(18)), t3.at(Integer(2)));
}

TEST(PowerByMatrix, Examples) {
  std::vector<MultElement> c{el("t")};
  auto ds = division_system(c);
  auto id = power_by_matrix(ds, {{1}});
  EXPECT_EQ(*id[0].materialize(c), el("t"));
  auto sq = power_by_matrix(ds, {{2}});
  EXPECT_EQ(*sq[0].materialize(c), el("t^2"));

  std::vector<MultElement> c2{el("t"), el("t+1")};
  auto half = power_by_matrix(division_system(c2), {{Rational(1, 2), 0}});
  EXPECT_FALSE(half[0].materialize(c2));
  EXPECT_EQ(to_string(half[0], c2), "t^(1/2)");
  EXPECT_EQ(half[0].root_of_unity, 0);
}

TEST(PowerByMatrix, TwistedRoots) {
  std::vector<MultElement> c{el("t^2")};
  auto ds = division_system(c, Twist::constant({Integer(1)}));
  auto r = power_by_matrix(ds, {{Rational(1, 2)}});
  EXPECT_EQ(r[0].root_of_unity, Rational(1, 2));
  EXPECT_EQ(to_string(r[0], c), "zeta_2^1*t");
  // Squaring the twisted root recovers t^2 exactly.
  auto back = transform(r, IntMatrix{{2}});
  EXPECT_EQ(*back[0].materialize(c), el("t^2"));
}

TEST(PowerByMatrix, PerfectClosureRootsAreUntwisted) {
  std::vector<MultElement> c{el("t", 2)};
  auto ds = division_system(c, Twist::random(1, 3, 2));
  auto r = power_by_matrix(ds, {{Rational(1, 4)}});
  ASSERT_TRUE(r[0].materialize(c));
  EXPECT_EQ(*r[0].materialize(c), el("t^(1/4)", 2));
}

TEST(PowerByMatrix, UnimodularRoundTrip) {
  std::vector<MultElement> c{el("t"), el("t+1"), el("x+t")};
  auto ds = division_system(c, Twist::random(3, 5));
  IntMatrix m{{2, 1, 0}, {1, 1, 0}, {3, 0, 1}};
  IntMatrix minv = unimodular_inverse(m);
  RationalMatrix mq;
  for (std::size_t i = 0; i < 3; ++i) mq.emplace_back(m.row(i).begin(), m.row(i).end());
  auto x = power_by_matrix(ds, mq);
  auto back = transform(x, minv);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(*back[i].materialize(c), c[i]);
}

TEST(KummerGroup, Examples) {
  std::vector a{el("t")};
  EXPECT_EQ(kummer_group(a, Integer(5)).invariants, (std::vector<Integer>{5}));
  std::vector b{el("t^2")};
  EXPECT_TRUE(kummer_group(b, Integer(2)).invariants.empty());
  std::vector c{el("t"), el("t+1")};
  EXPECT_EQ(kummer_group(c, Integer(6)).invariants, (std::vector<Integer>{6, 6}));
  std::vector d{el("t^2"), el("t^3")};
  EXPECT_THROW(kummer_group(d, Integer(2)), Error);
}

TEST(KummerGroup, LatticeProperties) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t k = 1 + rng() % 3;
    IntMatrix e = random_matrix(rng, k, k, 4);
    if (rank(e) != k) continue;
    Integer n = 1 + static_cast<long>(rng() % 30);
    auto g = kummer_group(e, n);
    for (const auto& d : g.invariants) EXPECT_EQ(n % d, 0);
    EXPECT_EQ(pow(n, static_cast<unsigned>(k)) % g.order(), 0);
    // Full order exactly when span(E) is pure, i.e. |det E| = 1.
    bool pure = abs(determinant(e)) == 1;
    if (pure) EXPECT_EQ(g.order(), pow(n, static_cast<unsigned>(k)));
  }
}

TEST(Realizable, Examples) {
  auto full = realizable_twists(IntMatrix(0, 2), IntMatrix{{1, 0}, {0, 1}}, Integer(5));
  EXPECT_EQ(full.order(), 25);
  auto pinned = realizable_twists(IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{1, 1}}, Integer(7));
  EXPECT_EQ(pinned.order(), 1);
  auto two = realizable_twists(IntMatrix{{1, 0}}, IntMatrix{{0, 2}}, Integer(4));
  EXPECT_EQ(two.order(), 2);
  EXPECT_TRUE(two.contains(std::vector<Integer>{2}));
  EXPECT_FALSE(two.contains(std::vector<Integer>{1}));
  EXPECT_THROW(realizable_twists(IntMatrix{{1, 0, 0}}, IntMatrix{{1, 0}}, Integer(3)), Error);
}

TEST(Realizable, MatchesEnumeration) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t r = 1 + rng() % 3, ka = rng() % (r + 1), kb = 1 + rng() % 2;
    IntMatrix ea = random_matrix(rng, ka, r, 4), eb = random_matrix(rng, kb, r, 4);
    long n = 1 + static_cast<long>(rng() % 8);
    auto sub = realizable_twists(ea, eb, Integer(n));
    auto brute = enumerate_realizable(ea, eb, n);
    EXPECT_EQ(sub.order(), Integer(static_cast<unsigned long>(brute.size())));
    for (const auto& v : brute) {
      std::vector<Integer> iv(v.begin(), v.end());
      EXPECT_TRUE(sub.contains(iv));
    }
  }
}

TEST(Realizable, ReductionCompatible) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix ea = random_matrix(rng, 1, 3, 4), eb = random_matrix(rng, 2, 3, 4);
    Integer n = 12;
    auto big = realizable_twists(ea, eb, n);
    for (const auto& d : divisors(n)) EXPECT_TRUE(big.reduce(d).is_subgroup_of(realizable_twists(ea, eb, d)));
  }
}

TEST(DeterminationConstant, Examples) {
  std::vector a{el("t")};
  std::vector b{el("t+1")};
  EXPECT_EQ(determination_constant(a, b).m, 1);
  std::vector b2{el("(t+1)^2")};
  auto dc = determination_constant(a, b2);
  EXPECT_EQ(dc.m, 2);
  EXPECT_TRUE(dc.minimal);
  std::vector a2{el("t", 2)};
  std::vector b3{el("(t+1)^2", 2)};
  EXPECT_EQ(determination_constant(a2, b3).m, 1);
  std::vector dep{el("t^2")};
  EXPECT_THROW(determination_constant(a, dep), Error);
}

TEST(FiniteDetermination, Examples) {
  std::vector a{el("t")};
  std::vector b{el("t+1")};
  auto r = check_finite_determination(a, b, 12);
  EXPECT_EQ(r.m, 1);
  EXPECT_TRUE(r.all_ok());
  EXPECT_EQ(r.levels.size(), 12u);

  std::vector b2{el("(t+1)^2")};
  auto r2 = check_finite_determination(a, b2, 12, 99);
  EXPECT_EQ(r2.m, 2);
  EXPECT_TRUE(r2.all_ok());
  const auto& l4 = r2.levels[3];
  EXPECT_EQ(l4.n, 4);
  auto sub = TwistSubgroup(l4.n, 1, l4.subgroup_gens);
  EXPECT_TRUE(sub.contains(std::vector<Integer>{2}));
  EXPECT_TRUE(sub.contains(std::vector<Integer>{0}));

  std::vector<MultElement> none;
  EXPECT_TRUE(check_finite_determination(a, none, 12).all_ok());
}

TEST(FiniteDetermination, RandomLatticesHoldAndAreMinimal) {
  std::mt19937_64 rng(77);
  int checked = 0;
  while (checked < 60) {
    std::size_t k = 1 + rng() % 3;
    IntMatrix e = random_matrix(rng, k, k, 4);
    if (rank(e) != k) continue;
    std::size_t ka = rng() % (k + 1);
    auto dc = determination_constant(e.select_rows(0, ka), e.select_rows(ka, k - ka));
    EXPECT_TRUE(dc.minimal);
    EXPECT_EQ(dc.m, snf(e).invariants.back());
    EXPECT_TRUE(check_finite_determination(dc, 30, checked).all_ok());
    ++checked;
  }
}

TEST(FiniteDetermination, CharacteristicSkipsLevels) {
  std::vector a{el("t", 3)};
  std::vector b{el("(t+1)^2", 3)};
  auto r = check_finite_determination(a, b, 9);
  for (const auto& l : r.levels) EXPECT_NE(l.n % 3, 0);
  EXPECT_TRUE(r.all_ok());
}
