#include "mullat/number_field.hpp"

#include "mullat/error.hpp"
#include "mullat/ufactor.hpp"

namespace mullat::puiseux {

CoeffField::CoeffField(poly::BaseField base) : base_(base), minpoly_(poly::UPoly::x(base)) {}

CoeffField CoeffField::extension(const poly::UPoly& minpoly, std::string name) {
  if (!minpoly.field().is_rational()) fail(ErrorKind::field_not_closed, "extensions are supported over Q only");
  if (minpoly.degree() < 2 || minpoly.degree() > max_extension_degree)
    fail(ErrorKind::field_not_closed,
         "extension of degree " + std::to_string(minpoly.degree()) + " by " + poly::to_string(minpoly) +
             " is outside the supported range");
  auto fac = poly::factor(minpoly);
  if (fac.factors.size() != 1 || fac.factors[0].multiplicity != 1)
    fail(ErrorKind::invalid_argument, "minimal polynomial " + poly::to_string(minpoly) + " is reducible");
  CoeffField k(minpoly.field());
  k.minpoly_ = minpoly.monic();
  k.name_ = std::move(name);
  return k;
}

Coeff CoeffField::generator() const {
  if (is_prime()) fail(ErrorKind::invalid_argument, "prime field has no generator");
  return Coeff::x(base_);
}

Coeff CoeffField::reduce(const poly::UPoly& v) const {
  if (is_prime()) return Coeff::constant(base_, v.coeff(0));
  return v % minpoly_;
}

Coeff CoeffField::inv(const Coeff& a) const {
  if (a.is_zero()) fail(ErrorKind::zero_input, "inverse of zero");
  if (is_prime()) return from_rational(base_.inv(a.coeff(0)));
  auto eg = poly::extended_gcd(a, minpoly_);
  // s a + t m = g with g a nonzero constant since m is irreducible.
  return reduce(eg.s.scaled(base_.inv(eg.g.coeff(0))));
}

Coeff CoeffField::pow(const Coeff& a, long e) const {
  Coeff base = e < 0 ? inv(a) : a;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  Coeff r = one();
  for (; n > 0; n >>= 1) {
    if (n & 1) r = mul(r, base);
    if (n > 1) base = mul(base, base);
  }
  return r;
}

std::string CoeffField::to_string(const Coeff& a) const {
  if (a.degree() <= 0) return mullat::to_string(a.coeff(0));
  return "(" + poly::to_string(a, name_) + ")";
}

void require_same_field(const CoeffField& a, const CoeffField& b) {
  if (!(a == b)) fail(ErrorKind::characteristic_mismatch, "series over different coefficient fields");
}

}  // namespace mullat::puiseux
