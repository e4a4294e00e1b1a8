#include "mullat/mpoly.hpp"

#include <algorithm>
#include <set>

#include "mullat/error.hpp"

namespace mullat::poly {

Monomial Monomial::var(const std::string& name, unsigned exp) {
  Monomial m;
  if (exp > 0) m.powers_.emplace_back(name, exp);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : powers_) d += e;
  return d;
}

unsigned Monomial::degree_in(const std::string& var) const {
  for (const auto& [v, e] : powers_)
    if (v == var) return e;
  return 0;
}

Monomial Monomial::without(const std::string& var) const {
  Monomial m;
  for (const auto& pe : powers_)
    if (pe.first != var) m.powers_.push_back(pe);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [v, e] : powers_)
    if (other.degree_in(v) < e) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  auto i = a.powers_.begin(), j = b.powers_.begin();
  while (i != a.powers_.end() || j != b.powers_.end()) {
    if (j == b.powers_.end() || (i != a.powers_.end() && i->first < j->first)) {
      r.powers_.push_back(*i++);
    } else if (i == a.powers_.end() || j->first < i->first) {
      r.powers_.push_back(*j++);
    } else {
      r.powers_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (const auto& [v, e] : a.powers_) {
    unsigned d = b.degree_in(v);
    if (e > d) r.powers_.emplace_back(v, e - d);
  }
  return r;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const auto& pa = a.powers();
  const auto& pb = b.powers();
  std::size_t i = 0;
  for (; i < pa.size() && i < pb.size(); ++i) {
    if (pa[i].first != pb[i].first) return pa[i].first > pb[i].first;
    if (pa[i].second != pb[i].second) return pa[i].second < pb[i].second;
  }
  return i == pa.size() && i < pb.size();
}

std::string to_string(const Monomial& m) {
  std::string s;
  for (const auto& [v, e] : m.powers()) {
    if (!s.empty()) s += '*';
    s += v;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

MPoly MPoly::constant(BaseField field, const Rational& c) {
  MPoly f(field);
  f.add_term(Monomial{}, c);
  return f;
}

MPoly MPoly::var(BaseField field, const std::string& name) {
  MPoly f(field);
  f.add_term(Monomial::var(name), 1);
  return f;
}

MPoly MPoly::from_upoly(const UPoly& u, const std::string& var) {
  MPoly f(u.field());
  for (std::size_t i = 0; i < u.coeffs().size(); ++i) f.add_term(Monomial::var(var, static_cast<unsigned>(i)), u.coeffs()[i]);
  return f;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational MPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned MPoly::degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

unsigned MPoly::degree_in(const std::string& var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(var));
  return d;
}

std::vector<std::string> MPoly::variables() const {
  std::set<std::string> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.powers()) vs.insert(v);
  return {vs.begin(), vs.end()};
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  Rational v = field_.element(c);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, v);
  if (inserted) return;
  it->second = field_.add(it->second, v);
  if (it->second == 0) terms_.erase(it);
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  require_same_field(a.field_, b.field_);
  MPoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  require_same_field(a.field_, b.field_);
  MPoly r(a.field_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MPoly MPoly::operator-() const { return scaled(-1); }

MPoly MPoly::scaled(const Rational& s) const {
  MPoly r(field_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * s);
  return r;
}

MPoly MPoly::times(const Monomial& mono) const {
  MPoly r(field_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m * mono, c);
  return r;
}

MPoly pow(const MPoly& f, unsigned e) {
  MPoly r = MPoly::constant(f.field(), 1), b = f;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b;
    if (e > 1) b = b * b;
  }
  return r;
}

MPoly MPoly::substitute(const std::string& var, const MPoly& g) const {
  auto cs = coefficients_in(var);
  MPoly r(field_);
  MPoly gp = constant(field_, 1);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i > 0) gp = gp * g;
    if (!cs[i].is_zero()) r = r + cs[i] * gp;
  }
  return r;
}

MPoly MPoly::evaluate(const std::map<std::string, Rational>& values) const {
  MPoly r(field_);
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    Monomial rest;
    for (const auto& [v, e] : m.powers()) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest = rest * Monomial::var(v, e);
      } else {
        coeff = field_.mul(coeff, field_.pow(field_.element(it->second), e));
      }
    }
    r.add_term(rest, coeff);
  }
  return r;
}

std::vector<MPoly> MPoly::coefficients_in(const std::string& var) const {
  std::vector<MPoly> cs(degree_in(var) + 1, MPoly(field_));
  for (const auto& [m, c] : terms_) cs[m.degree_in(var)].add_term(m.without(var), c);
  return cs;
}

UPoly MPoly::to_upoly(const std::string& var) const {
  std::vector<Rational> c(degree_in(var) + 1);
  for (const auto& [m, v] : terms_) {
    if (!m.without(var).is_one()) fail(ErrorKind::invalid_argument, "polynomial is not univariate in " + var);
    c[m.degree_in(var)] = v;
  }
  return UPoly(field_, c);
}

Monomial monomial_content(const MPoly& f) {
  if (f.is_zero()) fail(ErrorKind::zero_input, "content of the zero polynomial");
  Monomial g = f.terms().begin()->first;
  for (const auto& [m, c] : f.terms()) {
    Monomial next;
    for (const auto& [v, e] : g.powers()) next = next * Monomial::var(v, std::min(e, m.degree_in(v)));
    g = next;
  }
  return g;
}

MPoly divide_monomial(const MPoly& f, const Monomial& d) {
  MPoly r(f.field());
  for (const auto& [m, c] : f.terms()) {
    if (!d.divides(m)) fail(ErrorKind::invalid_argument, "monomial does not divide polynomial");
    r.add_term(m / d, c);
  }
  return r;
}

std::pair<Rational, MPoly> canonical_associate(const MPoly& f) {
  if (f.is_zero()) fail(ErrorKind::zero_input, "associate of the zero polynomial");
  const BaseField& k = f.field();
  if (!k.is_rational()) {
    Rational u = f.leading_coeff();
    return {u, f.scaled(k.inv(u))};
  }
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : f.terms()) {
    num_gcd = gcd(num_gcd, c.get_num());
    den_lcm = lcm(den_lcm, c.get_den());
  }
  Rational u(num_gcd);
  u /= den_lcm;
  if (f.leading_coeff() < 0) u = -u;
  return {u, f.scaled(1 / u)};
}

bool canonical_less(const MPoly& a, const MPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto i = a.terms().begin(), j = b.terms().begin();
  for (; i != a.terms().end() && j != b.terms().end(); ++i, ++j) {
    // Among equal degrees the larger monomial ranks first, so x precedes y.
    if (!(i->first == j->first)) return grlex_less(j->first, i->first);
    if (i->second != j->second) return i->second < j->second;
  }
  return i == a.terms().end() && j != b.terms().end();
}

std::string to_string(const MPoly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : f.terms()) {
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (s.empty()) {
      if (neg) s += '-';
    } else {
      s += neg ? "-" : "+";
    }
    if (m.is_one()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + "*";
      s += to_string(m);
    }
  }
  return s;
}

}  // namespace mullat::poly
