#pragma once

#include <vector>

#include "mullat/upoly.hpp"

namespace mullat::poly {

struct UFactor {
  UPoly poly;
  unsigned multiplicity = 1;
};

/// unit * prod factor^multiplicity. Over F_p factors are monic; over Q they
/// have coprime integer coefficients and positive leading coefficient.
struct UFactorization {
  BaseField field;
  Rational unit = 1;
  std::vector<UFactor> factors;
};

/// Complete factorization into irreducibles; f must be nonzero.
UFactorization factor(const UPoly& f);

/// Monic squarefree parts with multiplicities (f nonconstant).
std::vector<UFactor> squarefree_decomposition(const UPoly& f);

/// Distinct roots of f in its base field, ascending.
std::vector<Rational> roots(const UPoly& f);

UPoly expand(const UFactorization& fac);

/// Normalizes a nonzero polynomial: monic over F_p, primitive integral with
/// positive leading coefficient over Q. Returns the removed unit.
std::pair<Rational, UPoly> normalize_associate(const UPoly& f);

}  // namespace mullat::poly
