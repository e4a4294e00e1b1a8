#pragma once

#include <cstdint>
#include <string>

#include "mullat/integer.hpp"

namespace mullat::poly {

/// Q (p = 0) or F_p. Elements are Rationals; over F_p they are integers in [0, p).
class BaseField {
 public:
  BaseField() = default;
  explicit BaseField(std::uint64_t p);

  static BaseField rationals() { return BaseField(); }

  std::uint64_t p() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }
  Integer modulus() const { return Integer(static_cast<unsigned long>(p_)); }

  Rational element(const Rational& q) const;
  Rational element(long v) const { return element(Rational(v)); }

  Rational add(const Rational& a, const Rational& b) const { return element(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return element(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return element(a * b); }
  Rational neg(const Rational& a) const { return element(-a); }
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const { return mul(a, inv(b)); }
  Rational pow(const Rational& a, long e) const;

  std::string describe() const;

  friend bool operator==(const BaseField&, const BaseField&) = default;

 private:
  std::uint64_t p_ = 0;
};

void require_same_field(const BaseField& a, const BaseField& b);

}  // namespace mullat::poly
