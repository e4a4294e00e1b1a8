#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mullat/epmod.hpp"
#include "mullat/expr.hpp"
#include "mullat/mpoly.hpp"

/// Multiplicative groups of rational function fields over Q or F_p (and, in
/// characteristic p, of their perfect closures) in factored form.
namespace mullat::multfield {

using mullat::to_string;
using poly::to_string;
using epmod::to_string;

using epmod::Characteristic;
using epmod::EpLattice;
using epmod::EpScalar;
using epmod::ExponentVector;
using poly::BaseField;
using poly::MPoly;

/// Nonconstant polynomial in canonical associate form.
class Irreducible {
 public:
  /// Takes any nonzero nonconstant polynomial and stores its canonical associate.
  explicit Irreducible(const MPoly& poly);

  const MPoly& poly() const noexcept { return poly_; }
  std::vector<std::string> variables() const { return poly_.variables(); }

  friend bool operator==(const Irreducible& a, const Irreducible& b) { return a.poly_ == b.poly_; }
  friend bool operator<(const Irreducible& a, const Irreducible& b) { return poly::canonical_less(a.poly_, b.poly_); }

 private:
  MPoly poly_;
};

std::string to_string(const Irreducible& f);

/// constant * prod f^e with nonzero E_p exponents.
class MultElement {
 public:
  using Factors = std::map<Irreducible, EpScalar>;

  MultElement() = default;
  explicit MultElement(BaseField field, Rational constant = 1);

  static MultElement power(const Irreducible& f, const EpScalar& e);

  const BaseField& field() const noexcept { return field_; }
  Characteristic characteristic() const { return Characteristic(field_.p()); }
  const Rational& constant() const noexcept { return constant_; }
  const Factors& factors() const noexcept { return factors_; }
  bool is_constant() const noexcept { return factors_.empty(); }
  bool has_integral_exponents() const;
  std::vector<std::string> variables() const;

  friend MultElement operator*(const MultElement& a, const MultElement& b);
  friend MultElement operator/(const MultElement& a, const MultElement& b);
  MultElement inverse() const;
  friend bool operator==(const MultElement&, const MultElement&) = default;

 private:
  BaseField field_;
  Rational constant_ = 1;
  Factors factors_;
};

std::string to_string(const MultElement& e);

enum class CombineOp { multiply, divide };
MultElement combine(const MultElement& a, const MultElement& b, CombineOp op);

/// a^q for q in E_p. Fails with not_in_ep when q is not in E_p.
MultElement pow_scalar(const MultElement& a, const EpScalar& q);
MultElement pow_scalar(const MultElement& a, const Rational& q);

/// Factors a nonzero polynomial. Univariate input is factored completely;
/// multivariate input has its numeric and monomial content split off and the
/// rest is taken as irreducible after the available checks.
MultElement factor(const MPoly& f);
MultElement factor(const Rational& q, const BaseField& field);

/// Raises `reducible` when the check finds a proper factor. Degree one passes,
/// bivariate polynomials of total degree two are searched for linear factors,
/// larger multivariate input is accepted as claimed.
void check_claimed_irreducible(const MPoly& f);

/// Parses expanded or factored text ("t^2*(t+1)^-3", "t^3+2*t+1").
MultElement parse_element(const BaseField& field, std::string_view text);
MultElement evaluate(const BaseField& field, const expr::Node& node);

struct RationalFunction {
  MPoly num;
  MPoly den;
};

/// Expanded numerator and denominator; requires integral exponents.
RationalFunction expand(const MultElement& e);

/// Image under the place sending each listed variable to its value. Fails with
/// place_undefined when a factor vanishes there (a zero or a pole).
MultElement apply_place(const MultElement& e, const std::map<std::string, Rational>& place);

/// Lexicographically smallest assignment of non-negative integers to vars
/// (first variable varying slowest) under which no factor of any element
/// vanishes. Fails with no_evaluation_point over F_p when none exists.
std::map<std::string, Rational> find_place(std::span<const MultElement> elems, const std::vector<std::string>& vars);

/// Equality as field elements, by cross-multiplying expansions (after raising
/// both sides to a common power of p in characteristic p).
bool equal_as_functions(const MultElement& a, const MultElement& b);

/// Index entry of an exponent matrix: a rational prime (for constants modulo
/// torsion) or an irreducible polynomial.
using Generator = std::variant<Integer, Irreducible>;
std::string to_string(const Generator& g);

/// How constants are treated when passing to exponent vectors.
enum class Quotient {
  constants,  ///< all constants dropped (the group modulo the base field)
  torsion,    ///< Q constants kept by their prime exponents, only the sign dropped
};

struct ExponentMatrix {
  Characteristic characteristic;
  std::vector<Generator> index;
  std::vector<ExponentVector> rows;
};

ExponentMatrix exponent_matrix(std::span<const MultElement> elems, Quotient quotient = Quotient::constants);

/// Class of an exponent vector over the index, constant 1 (or the prime
/// product for prime generators).
MultElement element_of(const ExponentMatrix& context, const ExponentVector& v, const BaseField& field);

bool independent_mod_constants(std::span<const MultElement> elems);

struct HullBasis {
  ExponentMatrix context;
  EpLattice span;
  EpLattice hull;
  std::vector<MultElement> basis;
  /// elems[i] = sum_j E[i][j] basis[j] modulo constants.
  std::vector<std::vector<EpScalar>> E;
  Integer m = 1;
};

/// Fails with `dependent` unless the elements are independent modulo constants.
HullBasis pure_hull_basis_mod_constants(std::span<const MultElement> elems);

struct SpanSaturation {
  ExponentMatrix context;
  EpLattice span;
  EpLattice hull;
  std::vector<MultElement> hull_basis;
  Integer index = 1;
  std::vector<Integer> invariant_factors;
};

/// Pure hull of the span of possibly dependent elements.
SpanSaturation saturate_span(std::span<const MultElement> elems, Quotient quotient = Quotient::constants);

struct PrimeExponents {
  std::vector<Integer> primes;
  ExponentVector exponents;
};

/// Class of q in Q^* / {+1, -1}: its prime exponents.
PrimeExponents rationals_mod_torsion(const Rational& q);

}  // namespace mullat::multfield
