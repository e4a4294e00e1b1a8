#include "mullat/multfield.hpp"

#include <algorithm>
#include <set>

#include "mullat/error.hpp"
#include "mullat/ufactor.hpp"

namespace mullat::multfield {

Irreducible::Irreducible(const MPoly& poly) {
  if (poly.is_constant()) fail(ErrorKind::invalid_argument, "irreducible must be nonconstant");
  poly_ = poly::canonical_associate(poly).second;
}

std::string to_string(const Irreducible& f) { return poly::to_string(f.poly()); }

MultElement::MultElement(BaseField field, Rational constant) : field_(field), constant_(field.element(constant)) {
  if (constant_ == 0) fail(ErrorKind::zero_input, "zero is not in the multiplicative group");
}

MultElement MultElement::power(const Irreducible& f, const EpScalar& e) {
  MultElement r(f.poly().field());
  if (e.characteristic().p() != f.poly().field().p())
    fail(ErrorKind::characteristic_mismatch, "exponent ring does not match the base field");
  if (!e.is_zero()) r.factors_.emplace(f, e);
  return r;
}

bool MultElement::has_integral_exponents() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const auto& fe) { return fe.second.is_integer(); });
}

std::vector<std::string> MultElement::variables() const {
  std::set<std::string> vs;
  for (const auto& [f, e] : factors_)
    for (const auto& v : f.variables()) vs.insert(v);
  return {vs.begin(), vs.end()};
}

MultElement operator*(const MultElement& a, const MultElement& b) {
  poly::require_same_field(a.field_, b.field_);
  MultElement r = a;
  r.constant_ = a.field_.mul(a.constant_, b.constant_);
  for (const auto& [f, e] : b.factors_) {
    auto [it, inserted] = r.factors_.try_emplace(f, e);
    if (inserted) continue;
    it->second = it->second + e;
    if (it->second.is_zero()) r.factors_.erase(it);
  }
  return r;
}

MultElement MultElement::inverse() const {
  MultElement r(field_, field_.inv(constant_));
  for (const auto& [f, e] : factors_) r.factors_.emplace(f, -e);
  return r;
}

MultElement operator/(const MultElement& a, const MultElement& b) { return a * b.inverse(); }

MultElement combine(const MultElement& a, const MultElement& b, CombineOp op) {
  return op == CombineOp::multiply ? a * b : a / b;
}

namespace {

long to_long(const Integer& v) {
  if (!v.fits_slong_p()) fail(ErrorKind::invalid_argument, "exponent too large");
  return v.get_si();
}

std::string exponent_text(const EpScalar& e) {
  Rational q = e.to_rational();
  if (q == 1) return "";
  if (q.get_den() == 1) return "^" + to_string(q);
  return "^(" + to_string(q) + ")";
}

}  // namespace

MultElement pow_scalar(const MultElement& a, const EpScalar& q) {
  if (q.characteristic() != a.characteristic())
    fail(ErrorKind::characteristic_mismatch, "exponent ring does not match the base field");
  const BaseField& k = a.field();
  // In F_p every constant is its own p-th root, so only the numerator matters.
  MultElement r(k, k.pow(a.constant(), to_long(q.num())));
  for (const auto& [f, e] : a.factors()) r = r * MultElement::power(f, e * q);
  return r;
}

MultElement pow_scalar(const MultElement& a, const Rational& q) {
  return pow_scalar(a, EpScalar::from_rational(a.characteristic(), q));
}

std::string to_string(const MultElement& e) {
  const BaseField& k = e.field();
  if (e.is_constant()) return to_string(e.constant());
  std::string body;
  for (const auto& [f, x] : e.factors()) {
    if (!body.empty()) body += '*';
    const auto& terms = f.poly().terms();
    bool bare = terms.size() == 1 && terms.begin()->first.degree() == 1 && terms.begin()->second == 1;
    body += bare ? to_string(f) : "(" + to_string(f) + ")";
    body += exponent_text(x);
  }
  const Rational& c = e.constant();
  if (c == 1) return body;
  if (k.is_rational() && c == -1) return "-" + body;
  return to_string(c) + "*" + body;
}

void check_claimed_irreducible(const MPoly& f) {
  if (f.is_constant()) fail(ErrorKind::invalid_argument, "constant polynomial is not irreducible");
  if (f.degree() <= 1) return;
  auto reducible = [&](const std::string& why) {
    fail(ErrorKind::reducible, poly::to_string(f) + " is reducible: " + why);
  };
  if (!poly::monomial_content(f).is_one()) reducible("monomial content " + poly::to_string(poly::monomial_content(f)));
  auto vars = f.variables();
  if (vars.size() == 1) {
    auto fac = poly::factor(f.to_upoly(vars[0]));
    if (fac.factors.size() != 1 || fac.factors[0].multiplicity != 1)
      reducible("univariate factorization has several factors");
    return;
  }
  if (vars.size() != 2 || f.degree() != 2) return;
  const BaseField& k = f.field();
  for (int swap = 0; swap < 2; ++swap) {
    const std::string& x = vars[swap], &y = vars[1 - swap];
    poly::UPoly g(k);
    for (const auto& c : f.coefficients_in(y))
      if (!c.is_zero()) g = poly::gcd(g, c.to_upoly(x));
    if (g.degree() > 0) reducible("common factor " + poly::to_string(g, x));
  }
  // Any remaining linear factor is y - (r x + s) with s a root of f(0, y) and
  // r + s a root of f(1, y).
  const std::string& x = vars[0], &y = vars[1];
  auto f0 = f.evaluate({{x, Rational(0)}}).to_upoly(y);
  auto f1 = f.evaluate({{x, Rational(1)}}).to_upoly(y);
  for (const auto& s : poly::roots(f0))
    for (const auto& u : poly::roots(f1)) {
      MPoly line = MPoly::var(k, x).scaled(u - s) + MPoly::constant(k, s);
      if (f.substitute(y, line).is_zero())
        reducible("linear factor " + y + "-(" + poly::to_string(line) + ")");
    }
}

MultElement factor(const Rational& q, const BaseField& field) { return MultElement(field, q); }

MultElement factor(const MPoly& f) {
  if (f.is_zero()) fail(ErrorKind::zero_input, "cannot factor zero");
  const BaseField& k = f.field();
  if (f.is_constant()) return MultElement(k, f.constant_term());
  MultElement result(k);
  poly::Monomial content = poly::monomial_content(f);
  Characteristic ch(k.p());
  for (const auto& [v, e] : content.powers())
    result = result * MultElement::power(Irreducible(MPoly::var(k, v)), EpScalar(ch, e));
  auto [unit, g] = poly::canonical_associate(poly::divide_monomial(f, content));
  result = result * MultElement(k, unit);
  if (g.is_constant()) return result;
  auto vars = g.variables();
  if (vars.size() == 1) {
    auto fac = poly::factor(g.to_upoly(vars[0]));
    result = result * MultElement(k, fac.unit);
    for (const auto& u : fac.factors) {
      MPoly piece = MPoly::from_upoly(u.poly, vars[0]);
      auto [pu, canon] = poly::canonical_associate(piece);
      result = result * MultElement(k, k.pow(pu, u.multiplicity));
      result = result * MultElement::power(Irreducible(canon), EpScalar(ch, u.multiplicity));
    }
    return result;
  }
  check_claimed_irreducible(g);
  return result * MultElement::power(Irreducible(g), EpScalar(ch, 1));
}

namespace {

using expr::Node;

RationalFunction eval_rf(const BaseField& k, const Node& n) {
  switch (n.kind) {
    case Node::Kind::number:
      return {MPoly::constant(k, n.value), MPoly::constant(k, 1)};
    case Node::Kind::variable:
      return {MPoly::var(k, n.name), MPoly::constant(k, 1)};
    case Node::Kind::neg: {
      auto a = eval_rf(k, n.children[0]);
      return {-a.num, a.den};
    }
    case Node::Kind::add:
    case Node::Kind::sub: {
      auto a = eval_rf(k, n.children[0]);
      auto b = eval_rf(k, n.children[1]);
      MPoly cross = b.num * a.den;
      if (n.kind == Node::Kind::sub) cross = -cross;
      if (a.den == b.den) return {a.num + b.num.scaled(n.kind == Node::Kind::sub ? -1 : 1), a.den};
      return {a.num * b.den + cross, a.den * b.den};
    }
    case Node::Kind::mul: {
      auto a = eval_rf(k, n.children[0]);
      auto b = eval_rf(k, n.children[1]);
      return {a.num * b.num, a.den * b.den};
    }
    case Node::Kind::div: {
      auto a = eval_rf(k, n.children[0]);
      auto b = eval_rf(k, n.children[1]);
      if (b.num.is_zero()) fail(ErrorKind::zero_input, "division by zero");
      return {a.num * b.den, a.den * b.num};
    }
    case Node::Kind::pow: {
      if (n.exponent.get_den() != 1) fail(ErrorKind::invalid_argument, "fractional power inside a sum");
      auto a = eval_rf(k, n.children[0]);
      long e = to_long(n.exponent.get_num());
      if (e < 0) {
        if (a.num.is_zero()) fail(ErrorKind::zero_input, "division by zero");
        std::swap(a.num, a.den);
        e = -e;
      }
      return {poly::pow(a.num, static_cast<unsigned>(e)), poly::pow(a.den, static_cast<unsigned>(e))};
    }
  }
  fail(ErrorKind::invalid_argument, "bad expression node");
}

}  // namespace

MultElement evaluate(const BaseField& k, const Node& n) {
  switch (n.kind) {
    case Node::Kind::number:
      return factor(n.value, k);
    case Node::Kind::variable:
      return MultElement::power(Irreducible(MPoly::var(k, n.name)), EpScalar(Characteristic(k.p()), 1));
    case Node::Kind::neg:
      return MultElement(k, -1) * evaluate(k, n.children[0]);
    case Node::Kind::mul:
      return evaluate(k, n.children[0]) * evaluate(k, n.children[1]);
    case Node::Kind::div:
      return evaluate(k, n.children[0]) / evaluate(k, n.children[1]);
    case Node::Kind::pow:
      return pow_scalar(evaluate(k, n.children[0]), n.exponent);
    case Node::Kind::add:
    case Node::Kind::sub: {
      auto rf = eval_rf(k, n);
      if (rf.num.is_zero()) fail(ErrorKind::zero_input, "expression is zero");
      return factor(rf.num) / factor(rf.den);
    }
  }
  fail(ErrorKind::invalid_argument, "bad expression node");
}

MultElement parse_element(const BaseField& field, std::string_view text) { return evaluate(field, expr::parse(text)); }

RationalFunction expand(const MultElement& e) {
  const BaseField& k = e.field();
  RationalFunction r{MPoly::constant(k, e.constant()), MPoly::constant(k, 1)};
  for (const auto& [f, x] : e.factors()) {
    if (!x.is_integer()) fail(ErrorKind::not_in_ep, "cannot expand a fractional power of " + to_string(f));
    long v = to_long(x.num());
    if (v > 0) {
      r.num = r.num * poly::pow(f.poly(), static_cast<unsigned>(v));
    } else {
      r.den = r.den * poly::pow(f.poly(), static_cast<unsigned>(-v));
    }
  }
  return r;
}

MultElement apply_place(const MultElement& e, const std::map<std::string, Rational>& place) {
  const BaseField& k = e.field();
  MultElement out(k, e.constant());
  for (const auto& [f, x] : e.factors()) {
    MPoly g = f.poly();
    for (const auto& [var, value] : place)
      if (g.degree_in(var) > 0) g = g.substitute(var, MPoly::constant(k, value));
    if (g.is_zero()) fail(ErrorKind::place_undefined, to_string(f) + " vanishes at the evaluation point");
    out = out * pow_scalar(factor(g), x);
  }
  return out;
}

namespace {

bool search_place(std::vector<MPoly> polys, const std::vector<std::string>& vars, std::size_t next,
                  std::map<std::string, Rational>& place) {
  if (next == vars.size()) return true;
  const std::string& var = vars[next];
  const BaseField& k = polys.front().field();
  // Over Q a value outside the roots of every factor exists among the first
  // (sum of degrees + 1) candidates; over F_p there are only p candidates.
  unsigned long bound = 1;
  for (const auto& f : polys) bound += f.degree_in(var);
  if (!k.is_rational()) bound = std::min<unsigned long>(bound, k.p());
  for (unsigned long v = 0; v < bound; ++v) {
    std::vector<MPoly> sub;
    bool ok = true;
    for (const auto& f : polys) {
      MPoly g = f.degree_in(var) > 0 ? f.substitute(var, MPoly::constant(k, Rational(v))) : f;
      if (g.is_zero()) {
        ok = false;
        break;
      }
      sub.push_back(std::move(g));
    }
    if (!ok) continue;
    place[var] = Rational(v);
    if (search_place(std::move(sub), vars, next + 1, place)) return true;
    place.erase(var);
  }
  return false;
}

}  // namespace

std::map<std::string, Rational> find_place(std::span<const MultElement> elems, const std::vector<std::string>& vars) {
  std::map<std::string, Rational> place;
  if (elems.empty()) {
    for (const auto& v : vars) place[v] = 0;
    return place;
  }
  std::vector<MPoly> polys;
  for (const auto& e : elems) {
    require_same_field(e.field(), elems.front().field());
    for (const auto& [f, x] : e.factors()) polys.push_back(f.poly());
  }
  if (polys.empty()) polys.push_back(MPoly::constant(elems.front().field(), 1));
  if (!search_place(std::move(polys), vars, 0, place))
    fail(ErrorKind::no_evaluation_point, "every point of the prime field is a zero or pole of some factor");
  return place;
}

bool equal_as_functions(const MultElement& a, const MultElement& b) {
  if (!(a.field() == b.field())) return false;
  unsigned j = 0;
  for (const auto* e : {&a, &b})
    for (const auto& [f, x] : e->factors()) j = std::max(j, x.p_pow());
  auto lift = [&](const MultElement& e) {
    if (j == 0) return expand(e);
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), e.field().p(), j);
    return expand(pow_scalar(e, Rational(q)));
  };
  RationalFunction ra = lift(a), rb = lift(b);
  return ra.num * rb.den == rb.num * ra.den;
}

std::string to_string(const Generator& g) {
  if (const auto* prime = std::get_if<Integer>(&g)) return to_string(*prime);
  return to_string(std::get<Irreducible>(g));
}

namespace {

void add_prime_exponents(const Integer& n, long sign, std::map<Integer, long>& out) {
  for (const auto& [q, e] : factor_integer(abs(n))) out[q] += sign * static_cast<long>(e);
}

std::map<Integer, long> prime_exponents(const Rational& q) {
  std::map<Integer, long> out;
  add_prime_exponents(q.get_num(), 1, out);
  add_prime_exponents(q.get_den(), -1, out);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

ExponentMatrix exponent_matrix(std::span<const MultElement> elems, Quotient quotient) {
  ExponentMatrix ctx;
  if (elems.empty()) return ctx;
  const BaseField k = elems[0].field();
  ctx.characteristic = Characteristic(k.p());
  for (const auto& e : elems) poly::require_same_field(k, e.field());
  bool primes = quotient == Quotient::torsion && k.is_rational();
  std::set<Integer> prime_set;
  std::set<Irreducible> irr_set;
  for (const auto& e : elems) {
    if (primes)
      for (const auto& [q, x] : prime_exponents(e.constant())) prime_set.insert(q);
    for (const auto& [f, x] : e.factors()) irr_set.insert(f);
  }
  for (const auto& q : prime_set) ctx.index.emplace_back(q);
  for (const auto& f : irr_set) ctx.index.emplace_back(f);
  for (const auto& e : elems) {
    ExponentVector row(ctx.characteristic, ctx.index.size());
    std::size_t i = 0;
    if (primes) {
      auto pe = prime_exponents(e.constant());
      for (const auto& q : prime_set) {
        auto it = pe.find(q);
        if (it != pe.end()) row[i] = EpScalar(ctx.characteristic, Integer(it->second));
        ++i;
      }
    }
    for (const auto& f : irr_set) {
      auto it = e.factors().find(f);
      if (it != e.factors().end()) row[i] = it->second;
      ++i;
    }
    ctx.rows.push_back(std::move(row));
  }
  return ctx;
}

MultElement element_of(const ExponentMatrix& ctx, const ExponentVector& v, const BaseField& field) {
  MultElement r(field);
  for (std::size_t i = 0; i < ctx.index.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (const auto* prime = std::get_if<Integer>(&ctx.index[i])) {
      r = r * MultElement(field, pow(Rational(*prime), to_long(v[i].num())));
    } else {
      r = r * MultElement::power(std::get<Irreducible>(ctx.index[i]), v[i]);
    }
  }
  return r;
}

bool independent_mod_constants(std::span<const MultElement> elems) {
  auto ctx = exponent_matrix(elems);
  auto lattice = epmod::canonical_lattice(ctx.characteristic, ctx.index.size(), ctx.rows);
  return lattice.rank() == elems.size();
}

HullBasis pure_hull_basis_mod_constants(std::span<const MultElement> elems) {
  HullBasis out;
  out.context = exponent_matrix(elems);
  const auto& ctx = out.context;
  const std::size_t k = ctx.index.size();
  out.span = epmod::canonical_lattice(ctx.characteristic, k, ctx.rows);
  if (out.span.rank() != elems.size()) fail(ErrorKind::dependent, "elements are dependent modulo constants");
  auto full = EpLattice::full(ctx.characteristic, k);
  out.hull = epmod::pure_hull(out.span, full);
  if (elems.empty()) return out;
  for (const auto& b : out.hull.basis_vectors()) out.basis.push_back(element_of(ctx, b, elems[0].field()));
  for (const auto& row : ctx.rows) out.E.push_back(*epmod::member(row, out.hull));
  out.m = epmod::saturation_index(out.span, full).exponent;
  return out;
}

SpanSaturation saturate_span(std::span<const MultElement> elems, Quotient quotient) {
  SpanSaturation out;
  out.context = exponent_matrix(elems, quotient);
  const auto& ctx = out.context;
  const std::size_t k = ctx.index.size();
  out.span = epmod::canonical_lattice(ctx.characteristic, k, ctx.rows);
  auto full = EpLattice::full(ctx.characteristic, k);
  out.hull = epmod::pure_hull(out.span, full);
  if (elems.empty()) return out;
  for (const auto& b : out.hull.basis_vectors()) out.hull_basis.push_back(element_of(ctx, b, elems[0].field()));
  auto idx = epmod::saturation_index(out.span, full);
  out.index = idx.index;
  out.invariant_factors = idx.invariant_factors;
  return out;
}

PrimeExponents rationals_mod_torsion(const Rational& q) {
  if (q == 0) fail(ErrorKind::zero_input, "zero is not in Q^*");
  PrimeExponents out;
  Characteristic ch(0);
  std::vector<EpScalar> entries;
  for (const auto& [prime, e] : prime_exponents(q)) {
    out.primes.push_back(prime);
    entries.emplace_back(ch, Integer(e));
  }
  out.exponents = ExponentVector(ch, std::move(entries));
  return out;
}

}  // namespace mullat::multfield
