#include "mullat/ufactor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "mullat/error.hpp"

namespace mullat::poly {

namespace {

// ---------------------------------------------------------------- F_p

UPoly pth_root(const UPoly& f) {
  const auto p = static_cast<std::size_t>(f.field().p());
  std::vector<Rational> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
  return UPoly(f.field(), std::move(c));
}

void squarefree_fp(const UPoly& f, unsigned scale, std::vector<UFactor>& out) {
  const BaseField& k = f.field();
  if (f.degree() <= 0) return;
  UPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree_fp(pth_root(f), scale * static_cast<unsigned>(k.p()), out);
    return;
  }
  UPoly c = gcd(f, d);
  UPoly w = f / c;
  unsigned i = 1;
  const UPoly one = UPoly::constant(k, 1);
  while (w.degree() > 0) {
    UPoly y = gcd(w, c);
    UPoly z = (w / y).monic();
    if (z.degree() > 0) out.push_back({z, i * scale});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_fp(pth_root(c.monic()), scale * static_cast<unsigned>(k.p()), out);
}

std::vector<std::pair<UPoly, unsigned>> distinct_degree(UPoly f) {
  const BaseField& k = f.field();
  const Integer p = k.modulus();
  std::vector<std::pair<UPoly, unsigned>> out;
  const UPoly x = UPoly::x(k);
  UPoly h = x % f;
  for (unsigned d = 1; 2 * static_cast<long>(d) <= f.degree(); ++d) {
    h = pow_mod(h, p, f);
    UPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), static_cast<unsigned>(f.degree()));
  return out;
}

void equal_degree(const UPoly& g, unsigned d, std::mt19937_64& rng, std::vector<UPoly>& out) {
  if (g.degree() == static_cast<long>(d)) {
    out.push_back(g.monic());
    return;
  }
  const BaseField& k = g.field();
  const Integer p = k.modulus();
  std::uniform_int_distribution<unsigned long> coin(0, k.p() - 1);
  for (;;) {
    std::vector<Rational> a(static_cast<std::size_t>(g.degree()));
    for (auto& v : a) v = Rational(static_cast<long>(coin(rng)));
    UPoly r(k, a);
    if (r.degree() <= 0) continue;
    UPoly b(k);
    if (k.p() == 2) {
      UPoly term = r % g;
      b = term;
      for (unsigned i = 1; i < d; ++i) {
        term = (term * term) % g;
        b = b + term;
      }
    } else {
      Integer e = (mullat::pow(p, d) - 1) / 2;
      b = pow_mod(r, e, g) - UPoly::constant(k, 1);
    }
    UPoly s = gcd(b, g);
    if (s.degree() > 0 && s.degree() < g.degree()) {
      equal_degree(s, d, rng, out);
      equal_degree(g / s, d, rng, out);
      return;
    }
  }
}

std::vector<UPoly> factor_squarefree_fp(const UPoly& f) {
  std::mt19937_64 rng(0x6d756c6c6174ULL);
  std::vector<UPoly> out;
  for (auto& [g, d] : distinct_degree(f.monic())) equal_degree(g, d, rng, out);
  return out;
}

// ---------------------------------------------------------------- Z[x] mod m

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zreduce(ZPoly a, const Integer& m) {
  for (auto& v : a) v = mod(v, m);
  ztrim(a);
  return a;
}

ZPoly zsymmetric(ZPoly a, const Integer& m) {
  Integer half = m / 2;
  for (auto& v : a) {
    v = mod(v, m);
    if (v > half) v -= m;
  }
  ztrim(a);
  return a;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  ztrim(c);
  return c;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  ztrim(c);
  return c;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  ztrim(c);
  return c;
}

// a = q*h + r modulo m, h monic.
std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& h, const Integer& m) {
  a = zreduce(std::move(a), m);
  const std::size_t dh = h.size() - 1;
  if (a.size() <= dh) return {{}, a};
  ZPoly q(a.size() - dh);
  for (std::size_t i = a.size(); i-- > dh;) {
    Integer c = mod(a[i], m);
    if (c == 0) continue;
    q[i - dh] = c;
    for (std::size_t j = 0; j <= dh; ++j) a[i - dh + j] -= c * h[j];
  }
  return {zreduce(std::move(q), m), zreduce(std::move(a), m)};
}

ZPoly to_z(const UPoly& f) {
  ZPoly z;
  for (const auto& c : f.coeffs()) z.push_back(c.get_num());
  return z;
}

UPoly from_z(const BaseField& k, const ZPoly& z) {
  std::vector<Rational> c(z.begin(), z.end());
  return UPoly(k, std::move(c));
}

// One quadratic Hensel step (f = g*h mod m, s*g + t*h = 1 mod m) to modulus mm.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& mm) {
  ZPoly e = zreduce(zsub(f, zmul(g, h)), mm);
  auto [q, r] = zdivmod_monic(zmul(s, e), h, mm);
  ZPoly g2 = zreduce(zadd(g, zadd(zmul(t, e), zmul(q, g))), mm);
  ZPoly h2 = zreduce(zadd(h, r), mm);
  ZPoly b = zreduce(zsub(zadd(zmul(s, g2), zmul(t, h2)), ZPoly{1}), mm);
  auto [c, d] = zdivmod_monic(zmul(s, b), h2, mm);
  ZPoly s2 = zreduce(zsub(s, d), mm);
  ZPoly t2 = zreduce(zsub(t, zadd(zmul(t, b), zmul(c, g2))), mm);
  g = std::move(g2);
  h = std::move(h2);
  s = std::move(s2);
  t = std::move(t2);
}

// Lifts f = lc(f) * prod(factors) mod p to modulus P = p^k; factors monic mod p.
void multi_lift(const ZPoly& f, const std::vector<UPoly>& factors, const Integer& p, const Integer& P,
                std::vector<ZPoly>& out) {
  const BaseField fp(p.get_ui());
  if (factors.size() == 1) {
    Integer inv = inverse_mod(f.back(), P);
    ZPoly u = f;
    for (auto& v : u) v *= inv;
    out.push_back(zreduce(u, P));
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<UPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<UPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  UPoly g0 = UPoly::constant(fp, Rational(f.back()));
  for (const auto& u : left) g0 = g0 * u;
  UPoly h0 = UPoly::constant(fp, 1);
  for (const auto& u : right) h0 = h0 * u;
  ExtendedGcd eg = extended_gcd(g0, h0);
  ZPoly g = to_z(g0), h = to_z(h0), s = to_z(eg.s), t = to_z(eg.t);
  Integer m = p;
  while (m < P) {
    Integer mm = std::min(Integer(m * m), P);
    hensel_step(f, g, h, s, t, mm);
    m = mm;
  }
  multi_lift(g, left, p, P, out);
  multi_lift(h, right, p, P, out);
}

Integer content(const ZPoly& f) {
  Integer c = 0;
  for (const auto& v : f) c = gcd(c, v);
  return c;
}

ZPoly primitive(ZPoly f) {
  Integer c = content(f);
  if (c == 0) return f;
  if (f.back() < 0) c = -c;
  for (auto& v : f) v /= c;
  return f;
}

std::vector<ZPoly> zassenhaus(const ZPoly& f) {
  const long n = static_cast<long>(f.size()) - 1;
  if (n <= 1) return {f};
  const BaseField q(0);
  const UPoly fq = from_z(q, f);
  // Prime with good reduction.
  unsigned long p = 3;
  std::vector<UPoly> modular;
  for (;; ++p) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    const BaseField fp(p);
    UPoly fm = from_z(fp, f);
    if (gcd(fm, fm.derivative()).degree() != 0) continue;
    modular = factor_squarefree_fp(fm);
    break;
  }
  if (modular.size() == 1) return {f};

  Integer norm2 = 0;
  for (const auto& v : f) norm2 += v * v;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  Integer bound = abs(f.back()) * mullat::pow(Integer(2), static_cast<unsigned>(n)) * (root + 1);
  const Integer pz(p);
  Integer P = pz;
  while (P <= 2 * bound) P *= pz;

  std::vector<ZPoly> lifted;
  multi_lift(f, modular, pz, P, lifted);

  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  for (std::size_t s = 1; 2 * s <= remaining.size();) {
    bool found = false;
    std::vector<bool> pick(remaining.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), true);
    do {
      ZPoly g{rest.back()}, h{rest.back()};
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (pick[i])
          g = zsymmetric(zmul(g, lifted[remaining[i]]), P);
        else
          h = zsymmetric(zmul(h, lifted[remaining[i]]), P);
      }
      ZPoly gp = primitive(g), hp = primitive(h);
      if (zmul(gp, hp) == rest) {
        result.push_back(gp);
        rest = hp;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (!pick[i]) keep.push_back(remaining[i]);
        remaining = std::move(keep);
        found = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found) ++s;
  }
  result.push_back(rest);
  return result;
}

// Orders factors canonically: by degree, then coefficients.
bool factor_less(const UFactor& a, const UFactor& b) {
  if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
  for (long i = a.poly.degree(); i >= 0; --i) {
    auto ai = a.poly.coeff(static_cast<std::size_t>(i)), bi = b.poly.coeff(static_cast<std::size_t>(i));
    if (ai != bi) return ai < bi;
  }
  return a.multiplicity < b.multiplicity;
}

}  // namespace

std::pair<Rational, UPoly> normalize_associate(const UPoly& f) {
  if (f.is_zero()) fail(ErrorKind::zero_input, "normalizing the zero polynomial");
  const BaseField& k = f.field();
  if (!k.is_rational()) return {f.lc(), f.monic()};
  Integer den = 1;
  for (const auto& c : f.coeffs()) den = lcm(den, Integer(c.get_den()));
  ZPoly z;
  for (const auto& c : f.coeffs()) z.push_back(Integer(c * den));
  ZPoly pz = primitive(z);
  // f = unit * from_z(pz)
  Rational unit = f.lc() / Rational(pz.back());
  return {unit, from_z(k, pz)};
}

std::vector<UFactor> squarefree_decomposition(const UPoly& f) {
  std::vector<UFactor> out;
  if (f.degree() <= 0) return out;
  const BaseField& k = f.field();
  if (!k.is_rational()) {
    squarefree_fp(f.monic(), 1, out);
    return out;
  }
  UPoly g = f.monic();
  UPoly c = gcd(g, g.derivative());
  UPoly w = g / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    UPoly y = gcd(w, c);
    UPoly z = (w / y).monic();
    if (z.degree() > 0) out.push_back({z, i});
    ++i;
    w = y;
    c = c / y;
  }
  return out;
}

UFactorization factor(const UPoly& f) {
  if (f.is_zero()) fail(ErrorKind::zero_input, "factoring the zero polynomial");
  const BaseField& k = f.field();
  UFactorization out;
  out.field = k;
  out.unit = f.lc();
  if (f.degree() == 0) return out;
  std::map<std::vector<Rational>, unsigned> merged;
  for (const auto& part : squarefree_decomposition(f)) {
    if (!k.is_rational()) {
      for (auto& u : factor_squarefree_fp(part.poly)) merged[u.coeffs()] += part.multiplicity;
      continue;
    }
    auto [unit, prim] = normalize_associate(part.poly);
    for (auto& z : zassenhaus(to_z(prim))) {
      UPoly u = from_z(k, z);
      merged[u.coeffs()] += part.multiplicity;
    }
  }
  for (auto& [coeffs, mult] : merged) out.factors.push_back({UPoly(k, coeffs), mult});
  std::sort(out.factors.begin(), out.factors.end(), factor_less);
  // The unit makes the product exact.
  UPoly prod = UPoly::constant(k, 1);
  for (const auto& fa : out.factors) prod = prod * pow(fa.poly, fa.multiplicity);
  out.unit = k.div(f.lc(), prod.lc());
  return out;
}

std::vector<Rational> roots(const UPoly& f) {
  std::vector<Rational> out;
  if (f.is_zero()) fail(ErrorKind::zero_input, "roots of the zero polynomial");
  for (const auto& fa : factor(f).factors)
    if (fa.poly.degree() == 1) out.push_back(f.field().neg(f.field().div(fa.poly.coeff(0), fa.poly.coeff(1))));
  std::sort(out.begin(), out.end());
  return out;
}

UPoly expand(const UFactorization& fac) {
  UPoly prod = UPoly::constant(fac.field, fac.unit);
  for (const auto& fa : fac.factors) prod = prod * pow(fa.poly, fa.multiplicity);
  return prod;
}

}  // namespace mullat::poly
