#include "mullat/series.hpp"

#include <algorithm>
#include <regex>

#include "mullat/error.hpp"
#include "mullat/expr.hpp"

namespace mullat::puiseux {

namespace {

std::optional<Rational> min_opt(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

PuiseuxSeries PuiseuxSeries::constant(const CoeffField& field, const Coeff& c) {
  return monomial(field, c, 0);
}

PuiseuxSeries PuiseuxSeries::monomial(const CoeffField& field, const Coeff& c, const Rational& e) {
  PuiseuxSeries s(field);
  s.add_term(e, c);
  return s;
}

std::optional<Rational> PuiseuxSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<Rational> PuiseuxSeries::valuation_bound() const {
  if (terms_.empty()) return trunc_;
  return terms_.begin()->first;
}

Coeff PuiseuxSeries::leading_coeff() const {
  if (terms_.empty()) fail(ErrorKind::zero_series, "leading coefficient of a zero series");
  return terms_.begin()->second;
}

Coeff PuiseuxSeries::coeff(const Rational& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_.zero() : it->second;
}

Integer PuiseuxSeries::ram() const {
  Integer r = 1;
  const Integer p = field_.base().modulus();
  for (const auto& [e, c] : terms_) {
    Integer d = e.get_den();
    if (p != 0)
      while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) d /= p;
    mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), d.get_mpz_t());
  }
  return r;
}

void PuiseuxSeries::add_term(const Rational& e, const Coeff& c) {
  if (trunc_ && e >= *trunc_) return;
  auto it = terms_.find(e);
  Coeff v = it == terms_.end() ? field_.reduce(c) : it->second + c;
  if (v.is_zero()) {
    if (it != terms_.end()) terms_.erase(it);
  } else if (it == terms_.end()) {
    terms_.emplace(e, std::move(v));
  } else {
    it->second = std::move(v);
  }
}

PuiseuxSeries PuiseuxSeries::with_trunc(const std::optional<Rational>& r) const {
  PuiseuxSeries s(field_, min_opt(trunc_, r));
  for (const auto& [e, c] : terms_)
    if (!s.trunc_ || e < *s.trunc_) s.terms_.emplace(e, c);
  return s;
}

PuiseuxSeries PuiseuxSeries::lifted(const CoeffField& k) const {
  if (field_ == k) return *this;
  if (!field_.is_prime() || !(field_.base() == k.base()))
    fail(ErrorKind::characteristic_mismatch, "can only lift from the prime field");
  PuiseuxSeries s(k, trunc_);
  s.terms_ = terms_;
  return s;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries s(field_, trunc_);
  for (const auto& [e, c] : terms_) s.terms_.emplace(e, -c);
  return s;
}

PuiseuxSeries PuiseuxSeries::scaled(const Coeff& c) const {
  PuiseuxSeries s(field_, trunc_);
  if (c.is_zero()) return s;
  for (const auto& [e, v] : terms_) s.terms_.emplace(e, field_.mul(v, c));
  return s;
}

PuiseuxSeries PuiseuxSeries::shifted(const Rational& q) const {
  PuiseuxSeries s(field_, trunc_ ? std::optional<Rational>(*trunc_ + q) : std::nullopt);
  for (const auto& [e, c] : terms_) s.terms_.emplace(e + q, c);
  return s;
}

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  require_same_field(a.field_, b.field_);
  PuiseuxSeries s(a.field_, min_opt(a.trunc_, b.trunc_));
  for (const auto& [e, c] : a.terms_) s.add_term(e, c);
  for (const auto& [e, c] : b.terms_) s.add_term(e, c);
  return s;
}

PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return a + (-b); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  require_same_field(a.field_, b.field_);
  if (a.is_exact_zero() || b.is_exact_zero()) return PuiseuxSeries(a.field_);
  // An unknown tail of b starts at trunc(b) and meets a from val(a) on.
  std::optional<Rational> trunc;
  if (b.trunc_) trunc = min_opt(trunc, *a.valuation_bound() + *b.trunc_);
  if (a.trunc_) trunc = min_opt(trunc, *b.valuation_bound() + *a.trunc_);
  PuiseuxSeries s(a.field_, trunc);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Rational e = ea + eb;
      if (trunc && e >= *trunc) break;
      s.add_term(e, a.field_.mul(ca, cb));
    }
  }
  return s;
}

PuiseuxSeries invert(const PuiseuxSeries& a, const std::optional<Rational>& cap) {
  if (a.is_zero()) fail(ErrorKind::zero_series, "inverse of a series that is zero to its precision");
  const CoeffField& k = a.field();
  const Rational v = *a.valuation();
  const Coeff c_inv = k.inv(a.leading_coeff());
  if (a.terms().size() == 1 && a.is_exact()) return PuiseuxSeries::monomial(k, c_inv, -v);

  PuiseuxSeries x = a;
  if (x.is_exact()) {
    if (!cap) fail(ErrorKind::insufficient_precision, "inverting an exact series needs a truncation order");
    x = x.with_trunc(*cap);
    if (x.terms().size() == 1) return PuiseuxSeries::monomial(k, c_inv, -v).with_trunc(*cap - 2 * v);
  }
  const Rational rel = *x.trunc() - v;
  // x = c t^v (1 + u) with val(u) > 0; 1/(1+u) = sum (-u)^i.
  PuiseuxSeries neg_u = PuiseuxSeries::constant(k, k.one()) - x.scaled(c_inv).shifted(-v);
  PuiseuxSeries sum = PuiseuxSeries::constant(k, k.one()).with_trunc(rel);
  PuiseuxSeries w = sum;
  while (true) {
    w = (w * neg_u).with_trunc(rel);
    if (w.is_zero()) break;
    sum = sum + w;
  }
  return sum.scaled(c_inv).shifted(-v);
}

PuiseuxSeries pow(const PuiseuxSeries& a, long e, const std::optional<Rational>& cap) {
  PuiseuxSeries base = e < 0 ? invert(a, cap) : a;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  PuiseuxSeries r = PuiseuxSeries::constant(a.field(), a.field().one());
  for (; n > 0; n >>= 1) {
    if (n & 1) r = r * base;
    if (n > 1) base = base * base;
  }
  return r;
}

Subfield subfield_of(const CoeffField& k, const Coeff& c) {
  return k.in_prime_subfield(c) ? Subfield::prime : Subfield::full;
}

Subfield coefficient_subfield(const PuiseuxSeries& a) {
  for (const auto& [e, c] : a.terms())
    if (subfield_of(a.field(), c) == Subfield::full) return Subfield::full;
  return Subfield::prime;
}

Residue residue(const PuiseuxSeries& a) {
  const CoeffField& k = a.field();
  if (a.is_zero()) {
    if (a.trunc() && *a.trunc() <= 0)
      fail(ErrorKind::insufficient_precision, "constant term lies beyond the truncation order");
    return {k.zero(), Subfield::prime};
  }
  if (*a.valuation() < 0)
    fail(ErrorKind::not_in_valuation_ring, "valuation " + to_string(*a.valuation()) + " is negative");
  Coeff c = a.coeff(0);
  return {c, subfield_of(k, c)};
}

std::string to_string(Subfield s) { return s == Subfield::prime ? "prime" : "full"; }

std::string to_string(const PuiseuxSeries& a) {
  const CoeffField& k = a.field();
  std::string out;
  for (const auto& [e, c] : a.terms()) {
    std::string coeff;
    bool negative = false;
    if (k.in_prime_subfield(c)) {
      Rational q = c.coeff(0);
      negative = q < 0;
      coeff = mullat::to_string(negative ? Rational(-q) : q);
    } else {
      coeff = k.to_string(c);
    }
    if (out.empty())
      out = negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coeff + "*t^(" + mullat::to_string(e) + ")";
  }
  if (a.trunc()) {
    std::string o = "O(t^(" + mullat::to_string(*a.trunc()) + "))";
    out = out.empty() ? o : out + " + " + o;
  }
  return out.empty() ? "0" : out;
}

PuiseuxSeries evaluate_series(const CoeffField& k, const expr::Node& node, const std::optional<Rational>& cap) {
  using Kind = expr::Node::Kind;
  auto child = [&](std::size_t i) { return evaluate_series(k, node.children[i], cap); };
  switch (node.kind) {
    case Kind::number:
      return PuiseuxSeries::constant(k, node.value);
    case Kind::variable:
      if (node.name == "t") return PuiseuxSeries::t(k);
      if (!k.is_prime() && node.name == k.name()) return PuiseuxSeries::constant(k, k.generator());
      fail(ErrorKind::parse_error, "unknown variable '" + node.name + "' in a series");
    case Kind::add:
      return child(0) + child(1);
    case Kind::sub:
      return child(0) - child(1);
    case Kind::mul:
      return child(0) * child(1);
    case Kind::neg:
      return -child(0);
    case Kind::div:
      return child(0) * invert(child(1), cap);
    case Kind::pow: {
      PuiseuxSeries base = child(0);
      const Rational& q = node.exponent;
      if (q.get_den() == 1) {
        if (!q.get_num().fits_slong_p()) fail(ErrorKind::parse_error, "exponent too large");
        return pow(base, q.get_num().get_si(), cap);
      }
      if (base.terms().size() != 1 || base.leading_coeff() != k.one())
        fail(ErrorKind::parse_error, "fractional powers apply to powers of t only");
      Rational e = base.terms().begin()->first * q;
      auto trunc = base.trunc() ? std::optional<Rational>(e + (*base.trunc() - base.terms().begin()->first)) : std::nullopt;
      return PuiseuxSeries::monomial(k, k.one(), e).with_trunc(trunc);
    }
  }
  fail(ErrorKind::parse_error, "unsupported expression");
}

PuiseuxSeries parse_series(const CoeffField& field, std::string_view text, const std::optional<Rational>& default_trunc) {
  static const std::regex o_term(
      R"(([+-])?\s*O\s*\(\s*t\s*(\^\s*(\(\s*([+-]?\s*\d+(\s*/\s*\d+)?)\s*\)|([+-]?\d+)))?\s*\))");
  std::string rest;
  std::optional<Rational> trunc;
  std::string s(text);
  auto begin = std::sregex_iterator(s.begin(), s.end(), o_term);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    rest += s.substr(last, static_cast<std::size_t>(m.position()) - last);
    last = static_cast<std::size_t>(m.position() + m.length());
    std::string e = m[4].matched ? m[4].str() : m[6].matched ? m[6].str() : "1";
    e.erase(std::remove_if(e.begin(), e.end(), ::isspace), e.end());
    if (!e.empty() && e[0] == '+') e.erase(0, 1);
    Rational r(e);
    r.canonicalize();
    trunc = min_opt(trunc, r);
  }
  rest += s.substr(last);
  if (!trunc) trunc = default_trunc;
  if (rest.find_first_not_of(" \t\n") == std::string::npos) return PuiseuxSeries(field, trunc);
  return evaluate_series(field, expr::parse(rest), trunc).with_trunc(trunc);
}

}  // namespace mullat::puiseux
