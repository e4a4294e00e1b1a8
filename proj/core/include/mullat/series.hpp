#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mullat/expr.hpp"
#include "mullat/number_field.hpp"

namespace mullat::puiseux {

/// Truncated generalized power series sum c_e t^e over a CoeffField.
/// Terms with exponent >= trunc are unknown; a series without trunc is exact.
class PuiseuxSeries {
 public:
  using Terms = std::map<Rational, Coeff>;

  PuiseuxSeries() = default;
  explicit PuiseuxSeries(CoeffField field, std::optional<Rational> trunc = std::nullopt)
      : field_(std::move(field)), trunc_(std::move(trunc)) {}

  static PuiseuxSeries constant(const CoeffField& field, const Coeff& c);
  static PuiseuxSeries constant(const CoeffField& field, const Rational& c) {
    return constant(field, field.from_rational(c));
  }
  static PuiseuxSeries monomial(const CoeffField& field, const Coeff& c, const Rational& e);
  static PuiseuxSeries t(const CoeffField& field) { return monomial(field, field.one(), 1); }

  const CoeffField& field() const noexcept { return field_; }
  const Terms& terms() const noexcept { return terms_; }
  const std::optional<Rational>& trunc() const noexcept { return trunc_; }
  bool is_exact() const noexcept { return !trunc_.has_value(); }
  /// No known term; the value is zero only up to trunc.
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_exact_zero() const noexcept { return terms_.empty() && !trunc_; }

  /// Least exponent; nullopt for a zero series.
  std::optional<Rational> valuation() const;
  /// Valuation, or trunc for a zero series (a lower bound); nullopt if exactly zero.
  std::optional<Rational> valuation_bound() const;
  Coeff leading_coeff() const;
  Coeff coeff(const Rational& e) const;
  /// Ramification denominator: lcm of the p-free parts of exponent denominators.
  Integer ram() const;

  void add_term(const Rational& e, const Coeff& c);
  /// Lowers the truncation order, dropping terms at or above it.
  PuiseuxSeries with_trunc(const std::optional<Rational>& r) const;
  /// The same coefficients viewed in an extension of the prime field.
  PuiseuxSeries lifted(const CoeffField& k) const;

  PuiseuxSeries operator-() const;
  PuiseuxSeries scaled(const Coeff& c) const;
  /// Multiplication by t^q.
  PuiseuxSeries shifted(const Rational& q) const;

  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);

  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_ && a.trunc_ == b.trunc_;
  }

 private:
  CoeffField field_;
  Terms terms_;
  std::optional<Rational> trunc_;
};

/// 1/a. An exact series with several terms has no finite inverse, so it is
/// first truncated at `cap` (insufficient_precision if none is given).
PuiseuxSeries invert(const PuiseuxSeries& a, const std::optional<Rational>& cap = std::nullopt);
PuiseuxSeries pow(const PuiseuxSeries& a, long e, const std::optional<Rational>& cap = std::nullopt);

enum class Subfield { prime, full };

Subfield subfield_of(const CoeffField& k, const Coeff& c);
/// Smallest tagged subfield holding every known coefficient.
Subfield coefficient_subfield(const PuiseuxSeries& a);

struct Residue {
  Coeff value;
  Subfield subfield = Subfield::prime;
};

/// Coefficient at t^0 of a series in the valuation ring.
Residue residue(const PuiseuxSeries& a);

std::string to_string(const PuiseuxSeries& a);
std::string to_string(Subfield s);

/// Series value of an expression in t and the field generator. Divisions by
/// exact multi-term series truncate at cap.
PuiseuxSeries evaluate_series(const CoeffField& k, const expr::Node& node,
                              const std::optional<Rational>& cap = std::nullopt);

/// Reads "c1*t^(e1) + c2*t^(e2) + O(t^(r))" and more generally any expression
/// in t (rational powers allowed) and the field generator. Without an O-term
/// the series is exact unless default_trunc is given.
PuiseuxSeries parse_series(const CoeffField& field, std::string_view text,
                           const std::optional<Rational>& default_trunc = std::nullopt);

}  // namespace mullat::puiseux
