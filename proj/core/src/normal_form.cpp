#include "mullat/normal_form.hpp"

#include "mullat/error.hpp"

namespace mullat {

namespace {

struct Bezout {
  Integer g, s, t;  // s*a + t*b = g >= 0
};

Bezout bezout(const Integer& a, const Integer& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Unimodular 2x2 combination of rows (or columns) r1, r2 of m so that the
// entry a = m(r1) becomes gcd(a, b) and b = m(r2) becomes zero.
template <typename Get, typename Set>
void combine_pair(std::size_t len, Get get, Set set, const Integer& a, const Integer& b) {
  if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    // Plain subtraction; a Bezout pair with |a| = |b| would swap and can cycle.
    Integer q = b / a;
    for (std::size_t j = 0; j < len; ++j) set(1, j, get(1, j) - q * get(0, j));
    return;
  }
  Bezout bz = bezout(a, b);
  Integer a_g = a / bz.g, b_g = b / bz.g;
  for (std::size_t j = 0; j < len; ++j) {
    Integer x = get(0, j), y = get(1, j);
    set(0, j, bz.s * x + bz.t * y);
    set(1, j, a_g * y - b_g * x);
  }
}

void row_combine(IntMatrix& m, std::size_t r1, std::size_t r2, const Integer& a, const Integer& b) {
  combine_pair(
      m.cols(), [&](int which, std::size_t j) -> Integer { return m(which == 0 ? r1 : r2, j); },
      [&](int which, std::size_t j, Integer v) { m(which == 0 ? r1 : r2, j) = std::move(v); }, a, b);
}

void col_combine(IntMatrix& m, std::size_t c1, std::size_t c2, const Integer& a, const Integer& b) {
  combine_pair(
      m.rows(), [&](int which, std::size_t i) -> Integer { return m(i, which == 0 ? c1 : c2); },
      [&](int which, std::size_t i, Integer v) { m(i, which == 0 ? c1 : c2) = std::move(v); }, a, b);
}

}  // namespace

IntMatrix hnf(const IntMatrix& a) {
  IntMatrix m = a;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Integer x = m(r, c), y = m(i, c);
      row_combine(m, r, i, x, y);
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0) m.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      m.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return m.select_rows(0, r);
}

SnfResult snf(const IntMatrix& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  std::vector<Integer> invariants;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (s(i, j) != 0 && (pi == rows || abs(s(i, j)) < abs(s(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    s.swap_rows(t, pi);
    u.swap_rows(t, pi);
    s.swap_cols(t, pj);
    v.swap_cols(t, pj);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        Integer x = s(t, t), y = s(i, t);
        row_combine(s, t, i, x, y);
        row_combine(u, t, i, x, y);
        changed = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        Integer x = s(t, t), y = s(t, j);
        col_combine(s, t, j, x, y);
        col_combine(v, t, j, x, y);
        changed = true;
      }
      if (changed) continue;
      // Divisibility: fold an offending row into the pivot row and redo.
      bool offending = false;
      for (std::size_t i = t + 1; i < rows && !offending; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            s.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            offending = true;
            break;
          }
      if (!offending) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
    invariants.push_back(s(t, t));
  }
  return {std::move(u), std::move(v), std::move(invariants)};
}

IntMatrix smith_diagonal(std::size_t rows, std::size_t cols, const std::vector<Integer>& invariants) {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < invariants.size(); ++i) d(i, i) = invariants[i];
  return d;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  const std::size_t n = u.rows();
  if (u.cols() != n) fail(ErrorKind::dimension_mismatch, "inverse of non-square matrix");
  // Row-reduce [u | I] with unimodular integer operations.
  IntMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = u(i, j);
    aug(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = c + 1; i < n; ++i) {
      if (aug(i, c) == 0) continue;
      Integer x = aug(c, c), y = aug(i, c);
      row_combine(aug, c, i, x, y);
    }
    if (aug(c, c) != 1 && aug(c, c) != -1) fail(ErrorKind::invalid_argument, "matrix is not unimodular");
    if (aug(c, c) < 0) aug.negate_row(c);
  }
  for (std::size_t c = n; c-- > 0;)
    for (std::size_t i = 0; i < c; ++i) aug.add_row_multiple(i, c, -aug(i, c));
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace mullat
