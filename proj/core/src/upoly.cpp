#include "mullat/upoly.hpp"

#include <sstream>

#include "mullat/error.hpp"

namespace mullat::poly {

UPoly::UPoly(BaseField field, std::vector<Rational> coeffs) : field_(field), c_(std::move(coeffs)) {
  for (auto& v : c_) v = field_.element(v);
  trim();
}

UPoly UPoly::constant(BaseField field, const Rational& c) { return UPoly(field, {c}); }

UPoly UPoly::monomial(BaseField field, const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return UPoly(field, std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(lc()));
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(field_, std::move(d));
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
  return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  require_same_field(a.field_, b.field_);
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return UPoly(a.field_, std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly UPoly::operator-() const { return scaled(-1); }

UPoly UPoly::scaled(const Rational& s) const {
  std::vector<Rational> c = c_;
  for (auto& v : c) v *= s;
  return UPoly(field_, std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  require_same_field(a.field_, b.field_);
  if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(a.field_, std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  require_same_field(a.field(), b.field());
  if (b.is_zero()) fail(ErrorKind::zero_input, "polynomial division by zero");
  const BaseField& f = a.field();
  std::vector<Rational> r = a.coeffs();
  const long db = b.degree();
  if (a.degree() < db) return {UPoly(f), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  Rational inv = f.inv(b.lc());
  for (long i = a.degree(); i >= db; --i) {
    Rational coef = f.mul(r[static_cast<std::size_t>(i)], inv);
    if (coef == 0) continue;
    q[static_cast<std::size_t>(i - db)] = coef;
    for (long j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(i - db + j);
      r[idx] = f.sub(r[idx], f.mul(coef, b.coeffs()[static_cast<std::size_t>(j)]));
    }
  }
  return {UPoly(f, std::move(q)), UPoly(f, std::move(r))};
}

UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }
UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const UPoly& a, const UPoly& b) {
  const BaseField& f = a.field();
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(f, 1), s1(f);
  UPoly t0(f), t1 = UPoly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = f.inv(r0.lc());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

UPoly pow(const UPoly& a, unsigned e) {
  UPoly result = UPoly::constant(a.field(), 1), base = a;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

UPoly pow_mod(const UPoly& a, const Integer& e, const UPoly& m) {
  UPoly result = UPoly::constant(a.field(), 1) % m, base = a % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * base) % m;
  }
  return result;
}

std::string to_string(const UPoly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = f.degree(); i >= 0; --i) {
    Rational c = f.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? "-" : "+");
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << var;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

}  // namespace mullat::poly
