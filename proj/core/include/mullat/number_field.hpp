#pragma once

#include <string>
#include <vector>

#include "mullat/upoly.hpp"

namespace mullat::puiseux {

using mullat::to_string;

using Coeff = poly::UPoly;

/// Q, F_p, or Q(a) = Q[x]/(minpoly) with an irreducible minpoly of degree 2..4.
/// Elements are polynomials in the generator reduced modulo the minpoly.
class CoeffField {
 public:
  CoeffField() : CoeffField(poly::BaseField()) {}
  explicit CoeffField(poly::BaseField base);
  static CoeffField extension(const poly::UPoly& minpoly, std::string name = "a");

  static constexpr long max_extension_degree = 4;

  const poly::BaseField& base() const noexcept { return base_; }
  long degree() const noexcept { return minpoly_.degree(); }
  bool is_prime() const noexcept { return degree() == 1; }
  const poly::UPoly& minpoly() const noexcept { return minpoly_; }
  const std::string& name() const noexcept { return name_; }

  Coeff zero() const { return Coeff(base_); }
  Coeff one() const { return Coeff::constant(base_, 1); }
  Coeff from_rational(const Rational& q) const { return Coeff::constant(base_, q); }
  Coeff generator() const;
  /// Reduces a polynomial in the generator.
  Coeff reduce(const poly::UPoly& v) const;

  Coeff add(const Coeff& a, const Coeff& b) const { return a + b; }
  Coeff sub(const Coeff& a, const Coeff& b) const { return a - b; }
  Coeff mul(const Coeff& a, const Coeff& b) const { return reduce(a * b); }
  Coeff inv(const Coeff& a) const;
  Coeff div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }
  Coeff pow(const Coeff& a, long e) const;
  bool in_prime_subfield(const Coeff& a) const { return a.degree() <= 0; }

  std::string to_string(const Coeff& a) const;

  friend bool operator==(const CoeffField& a, const CoeffField& b) {
    return a.base_ == b.base_ && a.minpoly_ == b.minpoly_ && a.name_ == b.name_;
  }

 private:
  poly::BaseField base_;
  poly::UPoly minpoly_;
  std::string name_ = "a";
};

void require_same_field(const CoeffField& a, const CoeffField& b);

}  // namespace mullat::puiseux
