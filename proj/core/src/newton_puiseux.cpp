#include "mullat/newton_puiseux.hpp"

#include <algorithm>

#include "mullat/error.hpp"
#include "mullat/expr.hpp"
#include "mullat/ufactor.hpp"

namespace mullat::puiseux {

namespace {

constexpr int max_steps = 20000;

struct Point {
  long i;
  Rational v;  // valuation, or trunc when unknown
  bool known;
};

struct FoundRoot {
  Coeff value;
  unsigned multiplicity;
  std::optional<CoeffField> extension;
};

std::string poly_text(const CoeffField& k, const std::vector<Coeff>& phi) {
  std::string out;
  for (std::size_t j = phi.size(); j-- > 0;) {
    if (phi[j].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += k.to_string(phi[j]);
    if (j > 0) out += "*z^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

[[noreturn]] void not_closed(const CoeffField& k, const std::vector<Coeff>& phi, const std::string& need) {
  std::string where = k.is_prime() ? k.base().describe()
                                   : "Q(" + k.name() + "), " + poly::to_string(k.minpoly(), k.name()) + " = 0";
  fail(ErrorKind::field_not_closed,
       "characteristic polynomial " + poly_text(k, phi) + " over " + where + " needs roots of " + need);
}

std::vector<FoundRoot> roots_over_prime(const CoeffField& k, const std::vector<Coeff>& phi) {
  std::vector<Rational> c;
  for (const auto& x : phi) c.push_back(x.coeff(0));
  poly::UPoly g(k.base(), c);
  std::vector<FoundRoot> out;
  for (const auto& [h, mu] : poly::factor(g).factors) {
    if (h.degree() == 1) {
      out.push_back({k.from_rational(k.base().div(k.base().neg(h.coeff(0)), h.coeff(1))), mu, std::nullopt});
      continue;
    }
    if (!k.base().is_rational() || h.degree() > CoeffField::max_extension_degree)
      not_closed(k, phi, poly::to_string(h, "z"));
    CoeffField ext = CoeffField::extension(h, "a");
    out.push_back({ext.generator(), mu, ext});
  }
  return out;
}

/// Roots in K = Q(a) of a rational polynomial h (monic), when K contains them.
std::vector<Coeff> rational_poly_roots_in(const CoeffField& k, const poly::UPoly& h) {
  if (h.degree() == 1) return {k.from_rational(-h.coeff(0))};
  const poly::UPoly& m = k.minpoly();
  if (h.degree() != 2 || k.degree() != 2) {
    if (h == m) return {k.generator()};
    return {};
  }
  // K = Q(sqrt D) with sqrt D = 2a + a1; roots of h are (-b1 +- sqrt d)/2.
  const Rational a1 = m.coeff(1), big_d = a1 * a1 - 4 * m.coeff(0);
  const Rational b1 = h.coeff(1), d = b1 * b1 - 4 * h.coeff(0);
  Rational ratio = d / big_d;
  Integer num = ratio.get_num(), den = ratio.get_den();
  if (num < 0 || !mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return {};
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r = Rational(rn) / rd;
  Coeff sqrt_d = (k.generator().scaled(2) + k.from_rational(a1)).scaled(r);
  Coeff base = k.from_rational(-b1 / 2);
  return {base + sqrt_d.scaled(Rational(1, 2)), base - sqrt_d.scaled(Rational(1, 2))};
}

std::vector<FoundRoot> roots_over_extension(const CoeffField& k, const std::vector<Coeff>& phi) {
  const std::size_t n = phi.size() - 1;
  if (n == 1) return {{k.div(-phi[0], phi[1]), 1, std::nullopt}};

  // A single root of full multiplicity: phi = lc (z - c)^n.
  Coeff c = k.div(-phi[n - 1], k.mul(k.from_rational(static_cast<long>(n)), phi[n]));
  std::vector<Coeff> expanded{phi[n]};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Coeff> next(expanded.size() + 1, k.zero());
    for (std::size_t i = 0; i < expanded.size(); ++i) {
      next[i + 1] = next[i + 1] + expanded[i];
      next[i] = next[i] - k.mul(c, expanded[i]);
    }
    expanded = std::move(next);
  }
  if (expanded == phi) return {{c, static_cast<unsigned>(n), std::nullopt}};

  if (!std::all_of(phi.begin(), phi.end(), [&](const Coeff& x) { return k.in_prime_subfield(x); }))
    not_closed(k, phi, "a polynomial with coefficients outside Q");
  std::vector<Rational> q;
  for (const auto& x : phi) q.push_back(x.coeff(0));
  std::vector<FoundRoot> out;
  for (const auto& [h, mu] : poly::factor(poly::UPoly(k.base(), q)).factors) {
    auto rs = rational_poly_roots_in(k, h.monic());
    if (static_cast<long>(rs.size()) != h.degree()) not_closed(k, phi, poly::to_string(h, "z"));
    for (auto& r : rs) out.push_back({std::move(r), mu, std::nullopt});
  }
  return out;
}

std::vector<FoundRoot> roots_in_field(const CoeffField& k, const std::vector<Coeff>& phi) {
  return k.is_prime() ? roots_over_prime(k, phi) : roots_over_extension(k, phi);
}

SeriesPoly lift_all(const SeriesPoly& f, const CoeffField& k) {
  SeriesPoly g;
  for (const auto& c : f) g.push_back(c.lifted(k));
  return g;
}

class Solver {
 public:
  Solver(Rational prec, std::vector<PuiseuxRoot>& out) : prec_(std::move(prec)), out_(out) {}

  void run(SeriesPoly f, const PuiseuxSeries& acc, const std::optional<Rational>& last, unsigned e,
           unsigned conj) {
    if (++steps_ > max_steps) fail(ErrorKind::insufficient_precision, "root separation did not terminate");

    if (f[0].is_exact_zero()) {
      unsigned k = 0;
      while (k < e && f[k].is_exact_zero()) ++k;
      out_.push_back({acc, k, conj});
      if (k < e) run(SeriesPoly(f.begin() + k, f.end()), acc, last, e - k, conj);
      return;
    }

    const PuiseuxSeries& f0 = f[0];
    if (*f0.valuation_bound() >= prec_) {
      if (auto b = leaf_trunc(f, last, e)) {
        out_.push_back({acc.with_trunc(*b), e, conj});
        return;
      }
    }
    if (f0.is_zero())
      fail(ErrorKind::insufficient_precision,
           "f(" + to_string(acc) + ") is only known to be zero below t^(" + to_string(*f0.trunc()) + ")");
    step(f, acc, last, e, conj);
  }

 private:
  /// Truncation order certified for a cluster of e roots around the current
  /// approximation, or nullopt when the cluster still has to be split.
  std::optional<std::optional<Rational>> leaf_trunc(const SeriesPoly& f, const std::optional<Rational>& last,
                                                    unsigned e) const {
    if (f[e].is_zero()) return std::nullopt;
    const Rational ye = *f[e].valuation();
    std::optional<Rational> agree;  // every root of the cluster is within this
    for (unsigned i = 0; i < e; ++i) {
      if (f[i].is_exact_zero()) continue;
      Rational b = (*f[i].valuation_bound() - ye) / (e - i);
      if (!agree || b < *agree) agree = b;
    }
    Rational needed = 0;  // the tail must start here for f to vanish to prec
    bool any = false;
    for (std::size_t i = 1; i < f.size(); ++i) {
      if (f[i].is_exact_zero()) continue;
      Rational b = (prec_ - *f[i].valuation_bound()) / static_cast<long>(i);
      if (!any || b > needed) needed = b;
      any = true;
    }
    if (!agree) return std::optional<Rational>();
    if (any && needed > *agree) return std::nullopt;
    if (last && *agree <= *last) return std::nullopt;
    return std::optional<Rational>(*agree);
  }

  void step(const SeriesPoly& f, const PuiseuxSeries& acc, const std::optional<Rational>& last, unsigned e,
            unsigned conj) {
    const CoeffField& k = f[0].field();
    std::vector<Point> known, unknown;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].is_exact_zero()) continue;
      auto& dst = f[i].is_zero() ? unknown : known;
      dst.push_back({static_cast<long>(i), *f[i].valuation_bound(), !f[i].is_zero()});
    }
    // Lower convex hull with strictly increasing slopes.
    std::vector<Point> hull;
    for (const auto& pt : known) {
      while (hull.size() >= 2) {
        const Point& a = hull[hull.size() - 2];
        const Point& b = hull.back();
        if ((b.v - a.v) * (pt.i - b.i) >= (pt.v - b.v) * (b.i - a.i))
          hull.pop_back();
        else
          break;
      }
      hull.push_back(pt);
    }

    struct Segment {
      Point from, to;
      Rational slope;
    };
    std::vector<Segment> segments;
    for (std::size_t j = 0; j + 1 < hull.size(); ++j) {
      Rational slope = (hull[j + 1].v - hull[j].v) / (hull[j + 1].i - hull[j].i);
      if (last && -slope <= *last) break;
      segments.push_back({hull[j], hull[j + 1], slope});
    }
    const long end = segments.empty() ? 0 : segments.back().to.i;
    if (end != static_cast<long>(e))
      fail(ErrorKind::insufficient_precision, "Newton polygon is not determined by the known coefficients");

    for (const auto& u : unknown) {
      bool ok = true;
      if (u.i <= end) {
        for (const auto& s : segments)
          if (u.i >= s.from.i && u.i <= s.to.i) ok = ok && u.v > s.from.v + s.slope * (u.i - s.from.i);
      } else if (last) {
        ok = u.v >= segments.back().to.v - *last * (u.i - end);
      }
      if (!ok)
        fail(ErrorKind::insufficient_precision,
             "coefficient of y^" + std::to_string(u.i) + " is unknown where it affects the Newton polygon");
    }

    const Integer p = k.base().modulus();
    for (const auto& s : segments) {
      const Rational gamma = -s.slope;
      if (p != 0 && mpz_divisible_p(Rational(gamma).get_den().get_mpz_t(), p.get_mpz_t()))
        fail(ErrorKind::inseparable_step,
             "Newton polygon slope " + to_string(gamma) + " needs a p-th root of t in characteristic " +
                 mullat::to_string(p));
      std::vector<Coeff> phi(static_cast<std::size_t>(s.to.i - s.from.i + 1), k.zero());
      for (long i = s.from.i; i <= s.to.i; ++i) {
        const auto& fi = f[static_cast<std::size_t>(i)];
        if (!fi.is_zero() && *fi.valuation() == s.from.v + s.slope * (i - s.from.i))
          phi[static_cast<std::size_t>(i - s.from.i)] = fi.leading_coeff();
      }
      for (const auto& r : roots_in_field(k, phi)) {
        const CoeffField& kc = r.extension ? *r.extension : k;
        SeriesPoly fc = r.extension ? lift_all(f, kc) : f;
        PuiseuxSeries term = PuiseuxSeries::monomial(kc, r.value, gamma);
        unsigned cc = conj * static_cast<unsigned>(r.extension ? r.extension->degree() : 1);
        run(taylor_shift(fc, term), acc.lifted(kc) + term, gamma, r.multiplicity, cc);
      }
    }
  }

  Rational prec_;
  std::vector<PuiseuxRoot>& out_;
  int steps_ = 0;
};

PuiseuxSeries exact_part(const PuiseuxSeries& s) {
  PuiseuxSeries r(s.field());
  for (const auto& [e, c] : s.terms()) r.add_term(e, c);
  return r;
}

}  // namespace

PuiseuxSeries evaluate(const SeriesPoly& f, const PuiseuxSeries& y) {
  PuiseuxSeries acc(y.field());
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * y + f[i];
  return acc;
}

SeriesPoly taylor_shift(const SeriesPoly& f, const PuiseuxSeries& s) {
  if (f.empty()) return {};
  SeriesPoly g{f.back()};
  for (std::size_t i = f.size() - 1; i-- > 0;) {
    SeriesPoly next(g.size() + 1, PuiseuxSeries(s.field()));
    for (std::size_t j = 0; j < g.size(); ++j) {
      next[j] = next[j] + s * g[j];
      next[j + 1] = next[j + 1] + g[j];
    }
    next[0] = next[0] + f[i];
    g = std::move(next);
  }
  return g;
}

PuiseuxSeries residual(const SeriesPoly& f, const PuiseuxRoot& root) {
  const CoeffField& k = root.series.field();
  SeriesPoly g = taylor_shift(lift_all(f, k), exact_part(root.series));
  return evaluate(g, PuiseuxSeries(k, root.series.trunc()));
}

bool vanishes_to(const PuiseuxSeries& s, const Rational& prec) {
  auto v = s.valuation();
  if (v && *v < prec) return false;
  return !s.trunc() || *s.trunc() >= prec;
}

std::vector<PuiseuxRoot> newton_puiseux(const SeriesPoly& f, const Rational& prec) {
  SeriesPoly g = f;
  while (!g.empty() && g.back().is_exact_zero()) g.pop_back();
  if (g.empty()) fail(ErrorKind::zero_input, "the zero polynomial has no root list");
  for (const auto& c : g) require_same_field(c.field(), g[0].field());
  if (g.back().is_zero())
    fail(ErrorKind::insufficient_precision, "leading coefficient is zero to its precision");
  std::vector<PuiseuxRoot> out;
  if (g.size() == 1) return out;
  Solver(prec, out).run(g, PuiseuxSeries(g[0].field()), std::nullopt, static_cast<unsigned>(g.size() - 1), 1);
  return out;
}

namespace {

SeriesPoly poly_mul(const SeriesPoly& a, const SeriesPoly& b, const CoeffField& k) {
  SeriesPoly c(a.size() + b.size() - 1, PuiseuxSeries(k));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  return c;
}

SeriesPoly poly_add(SeriesPoly a, const SeriesPoly& b, const CoeffField& k) {
  if (a.size() < b.size()) a.resize(b.size(), PuiseuxSeries(k));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = a[i] + b[i];
  return a;
}

SeriesPoly eval_poly(const CoeffField& k, const expr::Node& node, const std::optional<Rational>& cap) {
  using Kind = expr::Node::Kind;
  if (!expr::variables(node).contains("y")) return {evaluate_series(k, node, cap)};
  auto child = [&](std::size_t i) { return eval_poly(k, node.children[i], cap); };
  auto negate = [](SeriesPoly p) {
    for (auto& c : p) c = -c;
    return p;
  };
  switch (node.kind) {
    case Kind::variable:
      return {PuiseuxSeries(k), PuiseuxSeries::constant(k, k.one())};
    case Kind::add:
      return poly_add(child(0), child(1), k);
    case Kind::sub:
      return poly_add(child(0), negate(child(1)), k);
    case Kind::neg:
      return negate(child(0));
    case Kind::mul:
      return poly_mul(child(0), child(1), k);
    case Kind::div: {
      SeriesPoly d = child(1);
      if (d.size() != 1) fail(ErrorKind::parse_error, "division by a polynomial in y");
      PuiseuxSeries inv = invert(d[0], cap);
      SeriesPoly n = child(0);
      for (auto& c : n) c = c * inv;
      return n;
    }
    case Kind::pow: {
      const Rational& q = node.exponent;
      if (q.get_den() != 1 || q < 0 || q > 1000) fail(ErrorKind::parse_error, "powers of y must be small natural numbers");
      SeriesPoly base = child(0), r{PuiseuxSeries::constant(k, k.one())};
      for (long i = 0; i < q.get_num().get_si(); ++i) r = poly_mul(r, base, k);
      return r;
    }
    case Kind::number:
      break;
  }
  fail(ErrorKind::parse_error, "unsupported expression");
}

}  // namespace

SeriesPoly parse_series_poly(const CoeffField& field, std::string_view text, const std::optional<Rational>& trunc) {
  SeriesPoly f = eval_poly(field, expr::parse(text), trunc);
  for (auto& c : f) c = c.with_trunc(trunc);
  while (!f.empty() && f.back().is_exact_zero()) f.pop_back();
  return f;
}

std::string to_string(const SeriesPoly& f) {
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i].is_exact_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(f[i]) + ")";
    if (i > 0) out += "*y^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace mullat::puiseux
