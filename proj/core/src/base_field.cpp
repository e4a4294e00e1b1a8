#include "mullat/base_field.hpp"

#include "mullat/error.hpp"

namespace mullat::poly {

BaseField::BaseField(std::uint64_t p) : p_(p) {
  if (p != 0 && !is_prime(p)) fail(ErrorKind::invalid_argument, "field characteristic must be 0 or prime");
}

Rational BaseField::element(const Rational& q) const {
  if (p_ == 0) return q;
  const Integer m = modulus();
  Integer den = mod(q.get_den(), m);
  if (den == 0) fail(ErrorKind::invalid_argument, "denominator vanishes in F_" + std::to_string(p_));
  return Rational(mod(q.get_num() * inverse_mod(den, m), m));
}

Rational BaseField::inv(const Rational& a) const {
  if (a == 0) fail(ErrorKind::zero_input, "inverse of zero");
  if (p_ == 0) return 1 / a;
  return Rational(inverse_mod(a.get_num(), modulus()));
}

Rational BaseField::pow(const Rational& a, long e) const {
  if (p_ == 0) return mullat::pow(a, e);
  Rational base = e < 0 ? inv(a) : a;
  Integer r;
  Integer n = base.get_num();
  mpz_powm_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e), modulus().get_mpz_t());
  return Rational(r);
}

std::string BaseField::describe() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

void require_same_field(const BaseField& a, const BaseField& b) {
  if (a != b) fail(ErrorKind::characteristic_mismatch, "base fields differ: " + a.describe() + " vs " + b.describe());
}

}  // namespace mullat::poly
