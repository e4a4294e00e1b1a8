#include <gtest/gtest.h>

#include <random>

#include "mullat/normal_form.hpp"
#include "oracles.hpp"

using namespace mullat;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_hnf(const IntMatrix& h) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t j = 0;
    while (j < h.cols() && h(i, j) == 0) ++j;
    if (j == h.cols() || (i > 0 && j <= last) || h(i, j) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, j) < 0 || h(k, j) >= h(i, j)) return false;
    last = j;
  }
  return true;
}

}  // namespace

TEST(Snf, SmallExample) {
  auto r = snf(IntMatrix{{2, 4}, {6, 8}});
  EXPECT_EQ(r.invariants, (std::vector<Integer>{2, 4}));
}

TEST(Snf, ZeroAndEmpty) {
  EXPECT_TRUE(snf(IntMatrix(3, 2)).invariants.empty());
  EXPECT_TRUE(snf(IntMatrix(0, 4)).invariants.empty());
}

TEST(Snf, ReconstructsAndMatchesOracles) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, 9);
    auto res = snf(a);
    EXPECT_EQ(res.U * a * res.V, smith_diagonal(r, c, res.invariants)) << to_string(a);
    EXPECT_EQ(abs(determinant(res.U)), 1);
    EXPECT_EQ(abs(determinant(res.V)), 1);
    for (std::size_t i = 1; i < res.invariants.size(); ++i)
      EXPECT_EQ(res.invariants[i] % res.invariants[i - 1], 0);
    EXPECT_EQ(res.invariants, oracle::elementary_snf_invariants(a.to_rows())) << to_string(a);
    EXPECT_EQ(res.invariants, oracle::determinantal_invariants(a.to_rows())) << to_string(a);
  }
}

TEST(Hnf, CanonicalAndSameLattice) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 4;
    IntMatrix a = random_matrix(rng, r, c, 12);
    IntMatrix h = hnf(a);
    EXPECT_TRUE(is_hnf(h)) << to_string(h);
    EXPECT_EQ(h.rows(), rank(a));
    // Row-permuted and unimodularly mixed input has the same HNF.
    IntMatrix b = a;
    if (b.rows() > 1) {
      b.swap_rows(0, b.rows() - 1);
      b.add_row_multiple(0, 1, Integer(3));
    }
    EXPECT_EQ(hnf(b), h);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      bool ok = false;
      auto x = solve_left(h, std::vector<Rational>(a.row(i).begin(), a.row(i).end()), ok);
      ASSERT_TRUE(ok);
      for (auto& q : x) EXPECT_EQ(q.get_den(), 1);
    }
  }
}

TEST(Hnf, UnimodularInverse) {
  IntMatrix u{{2, 1}, {1, 1}};
  EXPECT_EQ(u * unimodular_inverse(u), IntMatrix::identity(2));
  EXPECT_ANY_THROW(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}));
}
