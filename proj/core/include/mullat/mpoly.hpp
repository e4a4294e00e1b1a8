#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mullat/base_field.hpp"
#include "mullat/upoly.hpp"

namespace mullat::poly {

using mullat::to_string;

/// Sorted (variable, exponent) pairs with positive exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(const std::string& name, unsigned exp = 1);

  const std::vector<std::pair<std::string, unsigned>>& powers() const noexcept { return powers_; }
  unsigned degree() const;
  unsigned degree_in(const std::string& var) const;
  bool is_one() const noexcept { return powers_.empty(); }
  /// Same monomial with `var` removed.
  Monomial without(const std::string& var) const;
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires b to divide a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<std::string, unsigned>> powers_;
};

/// Graded lexicographic order with variables ranked alphabetically (x > y).
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

std::string to_string(const Monomial& m);

/// Sparse multivariate polynomial; iteration runs from the leading term down.
class MPoly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  MPoly() = default;
  explicit MPoly(BaseField field) : field_(field) {}

  static MPoly constant(BaseField field, const Rational& c);
  static MPoly var(BaseField field, const std::string& name);
  static MPoly from_upoly(const UPoly& f, const std::string& var);

  const BaseField& field() const noexcept { return field_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.begin()->second; }
  unsigned degree() const;
  unsigned degree_in(const std::string& var) const;
  std::vector<std::string> variables() const;

  void add_term(const Monomial& m, const Rational& c);

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator-() const;
  MPoly scaled(const Rational& s) const;
  MPoly times(const Monomial& m) const;
  friend bool operator==(const MPoly&, const MPoly&) = default;

  /// Replace `var` by g everywhere.
  MPoly substitute(const std::string& var, const MPoly& g) const;
  /// Replace the given variables by constants; the rest stay symbolic.
  MPoly evaluate(const std::map<std::string, Rational>& values) const;
  /// Coefficients c_i with f = sum c_i var^i.
  std::vector<MPoly> coefficients_in(const std::string& var) const;
  /// Univariate view; requires no other variable to occur.
  UPoly to_upoly(const std::string& var) const;

 private:
  BaseField field_;
  Terms terms_;
};

MPoly pow(const MPoly& f, unsigned e);

/// Largest monomial dividing every term (f nonzero).
Monomial monomial_content(const MPoly& f);
/// Exact division by a monomial dividing every term.
MPoly divide_monomial(const MPoly& f, const Monomial& m);

/// Unit u and canonical associate g with f = u * g: over Q integral with
/// content 1 and positive leading coefficient; over F_p monic.
std::pair<Rational, MPoly> canonical_associate(const MPoly& f);

/// Degree, then terms from the top (monomial, then coefficient).
bool canonical_less(const MPoly& a, const MPoly& b);

std::string to_string(const MPoly& f);

}  // namespace mullat::poly
