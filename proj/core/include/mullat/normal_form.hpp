#pragma once

#include <vector>

#include "mullat/matrix.hpp"

namespace mullat {

/// Row Hermite normal form of the row lattice of `a`: full row rank, positive
/// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix hnf(const IntMatrix& a);

struct SnfResult {
  IntMatrix U;  ///< unimodular, rows(a) x rows(a)
  IntMatrix V;  ///< unimodular, cols(a) x cols(a)
  std::vector<Integer> invariants;  ///< d1 | d2 | ... | dr, all positive
};

/// Smith normal form: U * a * V = diag(invariants, 0, ...).
SnfResult snf(const IntMatrix& a);

/// Diagonal matrix with the given shape carrying `invariants` then zeros.
IntMatrix smith_diagonal(std::size_t rows, std::size_t cols, const std::vector<Integer>& invariants);

/// Inverse of a unimodular matrix (exact; fails if |det| != 1).
IntMatrix unimodular_inverse(const IntMatrix& u);

}  // namespace mullat
