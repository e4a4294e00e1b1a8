#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mullat/base_field.hpp"

namespace mullat::poly {

/// Dense univariate polynomial over a BaseField, coefficients lowest degree first.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(BaseField field) : field_(field) {}
  UPoly(BaseField field, std::vector<Rational> coeffs);

  static UPoly constant(BaseField field, const Rational& c);
  static UPoly monomial(BaseField field, const Rational& c, std::size_t degree);
  static UPoly x(BaseField field) { return monomial(field, 1, 1); }

  const BaseField& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

  UPoly monic() const;
  UPoly derivative() const;
  Rational eval(const Rational& x) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  UPoly scaled(const Rational& s) const;

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void trim();

  BaseField field_;
  std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator/(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
/// Monic gcd (zero when both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// s*a + t*b = gcd(a, b) (monic).
struct ExtendedGcd {
  UPoly g, s, t;
};
ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b);
UPoly pow(const UPoly& a, unsigned e);
UPoly pow_mod(const UPoly& a, const Integer& e, const UPoly& m);

std::string to_string(const UPoly& f, const std::string& var = "x");

}  // namespace mullat::poly
