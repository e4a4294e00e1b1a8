#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the library's normal-form or lattice code.

#include <cstdint>
#include <optional>
#include <vector>

#include "mullat/integer.hpp"

namespace mullat::oracle {

using Matrix = std::vector<std::vector<Integer>>;

/// Invariant factors by textbook elementary operations: smallest-magnitude
/// pivot, Euclidean remainders, then the divisibility repair step.
std::vector<Integer> elementary_snf_invariants(Matrix a);

/// Invariant factors via determinantal divisors (gcd of k x k minors).
std::vector<Integer> determinantal_invariants(const Matrix& a);

/// Rational coefficients x with x * rows = v, or nullopt (plain Gauss-Jordan).
std::optional<std::vector<Rational>> rational_coordinates(const Matrix& rows, const std::vector<Rational>& v);

/// v in the Z[1/p]-span (Z-span for p = 0) of linearly independent rows.
bool in_span(const Matrix& independent_rows, const std::vector<Rational>& v, std::uint64_t p);

/// Linearly independent subset of the rows (greedy, over Q).
Matrix independent_rows(const Matrix& rows);

std::size_t rank_over_q(const Matrix& rows);

/// Every vector with entries in [-bound, bound]^dim.
std::vector<std::vector<Integer>> box(std::size_t dim, long bound);

}  // namespace mullat::oracle
