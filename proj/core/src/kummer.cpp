#include "mullat/kummer.hpp"

#include <random>

#include "mullat/error.hpp"
#include "mullat/normal_form.hpp"

namespace mullat::kummer {

using epmod::Characteristic;
using epmod::EpLattice;
using epmod::EpScalar;
using epmod::ExponentVector;

namespace {

Integer level_part(const Integer& n, std::uint64_t p) {
  if (n <= 0) fail(ErrorKind::invalid_argument, "level must be positive");
  return strip_prime(n, p);
}

Integer reduce(const Integer& v, const Integer& n) { return mod(v, n); }

// Digit i of the l-adic expansion of component j.
unsigned long adic_digit(std::uint64_t seed, const Integer& l, std::size_t j, unsigned i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(l.get_ui()), static_cast<std::uint32_t>(j), i};
  std::mt19937_64 rng(seq);
  return static_cast<unsigned long>(rng() % l.get_ui());
}

}  // namespace

Twist Twist::zero(std::size_t k, std::uint64_t p) { return constant(std::vector<Integer>(k, Integer(0)), p); }

Twist Twist::constant(std::vector<Integer> v, std::uint64_t p) {
  Twist t;
  t.kind_ = Kind::constant;
  t.k_ = v.size();
  t.p_ = p;
  t.values_ = std::move(v);
  return t;
}

Twist Twist::random(std::size_t k, std::uint64_t seed, std::uint64_t p) {
  Twist t;
  t.kind_ = Kind::random;
  t.k_ = k;
  t.p_ = p;
  t.seed_ = seed;
  return t;
}

Twist Twist::scaled(const Integer& s) const {
  Twist t = *this;
  t.scale_ *= s;
  return t;
}

std::vector<Integer> Twist::at(const Integer& n) const {
  const Integer np = level_part(n, p_);
  std::vector<Integer> out(k_, Integer(0));
  if (np == 1) return out;
  if (kind_ == Kind::constant) {
    for (std::size_t j = 0; j < k_; ++j) out[j] = reduce(values_[j] * scale_, np);
    return out;
  }
  auto factors = factor_integer(np);
  for (std::size_t j = 0; j < k_; ++j) {
    // CRT over the prime powers of n'.
    Integer value = 0, modulus = 1;
    for (const auto& [l, e] : factors) {
      if (!l.fits_ulong_p()) fail(ErrorKind::invalid_argument, "level has a prime factor too large for twists");
      Integer local = 0, place = 1;
      for (unsigned i = 0; i < e; ++i) {
        local += place * adic_digit(seed_, l, j, i);
        place *= l;
      }
      Integer t = reduce((local - value) * inverse_mod(modulus, place), place);
      value += modulus * t;
      modulus *= place;
    }
    out[j] = reduce(value * scale_, np);
  }
  return out;
}

DivisionSystemSpec division_system(std::vector<MultElement> base, std::optional<Twist> twist) {
  std::uint64_t p = base.empty() ? 0 : base[0].field().p();
  Twist t = twist ? *twist : Twist::zero(base.size(), p);
  if (t.dim() != base.size()) fail(ErrorKind::dimension_mismatch, "twist dimension differs from the base tuple");
  if (t.characteristic() != p) fail(ErrorKind::characteristic_mismatch, "twist characteristic differs from the base");
  return {std::move(base), std::move(t)};
}

namespace {

Rational frac_part(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return r - q;
}

bool in_ep(const Rational& q, std::uint64_t p) { return strip_prime(q.get_den(), p) == 1; }

}  // namespace

std::vector<FormalElement> power_by_matrix(const DivisionSystemSpec& ds, const RationalMatrix& m) {
  const std::size_t k = ds.base.size();
  const std::uint64_t p = ds.twist.characteristic();
  auto ctx = multfield::exponent_matrix(ds.base);
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : ctx.rows) rows.push_back(r.to_rationals());
  std::vector<FormalElement> out;
  for (const auto& q : m) {
    if (q.size() != k) fail(ErrorKind::dimension_mismatch, "matrix row length differs from the base tuple");
    FormalElement e;
    e.base_exponents = q;
    e.context.characteristic = ctx.characteristic;
    e.context.index = ctx.index;
    e.exponents.assign(ctx.index.size(), Rational(0));
    e.constant_exponents = q;
    for (std::size_t j = 0; j < k; ++j) {
      if (q[j] == 0) continue;
      for (std::size_t i = 0; i < e.exponents.size(); ++i) e.exponents[i] += q[j] * rows[j][i];
      // c^(u/N) = ((c^(1/p^s))^(1/N'))^u, and the twist of c at level N' moves
      // through the unique p^s-th root as multiplication by p^-s.
      Integer u = q[j].get_num(), big_n = q[j].get_den();
      Integer np = strip_prime(big_n, p);
      if (np == 1) continue;
      Integer ps = big_n / np;
      Integer tau = ds.twist.at(np)[j];
      Integer ex = reduce(u * tau * inverse_mod(ps, np), np);
      e.root_of_unity = frac_part(e.root_of_unity + Rational(ex) / np);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<FormalElement> transform(std::span<const FormalElement> xs, const IntMatrix& m) {
  if (m.cols() != xs.size()) fail(ErrorKind::dimension_mismatch, "matrix columns differ from tuple length");
  std::vector<FormalElement> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    FormalElement e;
    if (!xs.empty()) {
      e.context = xs[0].context;
      e.base_exponents.assign(xs[0].base_exponents.size(), Rational(0));
      e.constant_exponents = e.base_exponents;
      e.exponents.assign(xs[0].exponents.size(), Rational(0));
    }
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const Integer& c = m(i, j);
      if (c == 0) continue;
      if (xs[j].exponents.size() != e.exponents.size() || xs[j].base_exponents.size() != e.base_exponents.size())
        fail(ErrorKind::dimension_mismatch, "formal elements over different bases");
      for (std::size_t t = 0; t < e.base_exponents.size(); ++t) {
        e.base_exponents[t] += c * xs[j].base_exponents[t];
        e.constant_exponents[t] += c * xs[j].constant_exponents[t];
      }
      for (std::size_t t = 0; t < e.exponents.size(); ++t) e.exponents[t] += c * xs[j].exponents[t];
      e.root_of_unity = frac_part(e.root_of_unity + c * xs[j].root_of_unity);
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<MultElement> FormalElement::materialize(const std::vector<MultElement>& base) const {
  if (root_of_unity != 0 || base.size() != constant_exponents.size()) return std::nullopt;
  const std::uint64_t p = context.characteristic.p();
  if (base.empty()) return std::nullopt;
  MultElement r(base[0].field());
  for (std::size_t j = 0; j < base.size(); ++j) {
    const Rational& q = constant_exponents[j];
    if (q == 0 || base[j].constant() == 1) continue;
    if (!in_ep(q, p)) return std::nullopt;
    r = r * multfield::pow_scalar(MultElement(base[j].field(), base[j].constant()), q);
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (!in_ep(exponents[i], p)) return std::nullopt;
    const auto& f = std::get<multfield::Irreducible>(context.index[i]);
    r = r * MultElement::power(f, EpScalar::from_rational(context.characteristic, exponents[i]));
  }
  return r;
}

std::string to_string(const FormalElement& e, const std::vector<MultElement>& base) {
  std::vector<std::string> parts;
  if (e.root_of_unity != 0)
    parts.push_back("zeta_" + to_string(e.root_of_unity.get_den()) + "^" + to_string(e.root_of_unity.get_num()));
  auto power = [](const std::string& b, const Rational& q) {
    if (q == 1) return b;
    if (q.get_den() == 1) return b + "^" + to_string(q);
    return b + "^(" + to_string(q) + ")";
  };
  for (std::size_t j = 0; j < base.size() && j < e.constant_exponents.size(); ++j) {
    const Rational& c = base[j].constant();
    if (c == 1 || e.constant_exponents[j] == 0) continue;
    parts.push_back(power("(" + to_string(c) + ")", e.constant_exponents[j]));
  }
  for (std::size_t i = 0; i < e.exponents.size(); ++i) {
    if (e.exponents[i] == 0) continue;
    const auto& f = std::get<multfield::Irreducible>(e.context.index[i]);
    const auto& terms = f.poly().terms();
    bool bare = terms.size() == 1 && terms.begin()->first.degree() == 1;
    parts.push_back(power(bare ? to_string(f) : "(" + to_string(f) + ")", e.exponents[i]));
  }
  if (parts.empty()) return "1";
  std::string s;
  for (const auto& part : parts) s += (s.empty() ? "" : "*") + part;
  return s;
}

Integer KummerGroup::order() const {
  Integer o = 1;
  for (const auto& d : invariants) o *= d;
  return o;
}

KummerGroup kummer_group(const IntMatrix& e_a, const Integer& n, std::uint64_t p) {
  const Integer np = level_part(n, p);
  KummerGroup g{n, {}};
  if (rank(e_a) != e_a.rows()) fail(ErrorKind::dependent, "tuple is dependent");
  for (const auto& d : snf(e_a).invariants) {
    Integer q = np / gcd(np, d);
    if (q != 1) g.invariants.push_back(q);
  }
  std::sort(g.invariants.begin(), g.invariants.end());
  return g;
}

namespace {

IntMatrix integral_rows(const EpMatrix& m, std::size_t cols) {
  IntMatrix out(0, cols);
  for (const auto& row : m) {
    if (row.size() != cols) fail(ErrorKind::dimension_mismatch, "ragged exponent matrix");
    ExponentVector v(row.empty() ? Characteristic() : row[0].characteristic(), row);
    out.append_row(v.integral_scaling().second);
  }
  return out;
}

EpMatrix to_ep(const IntMatrix& m, Characteristic ch) {
  EpMatrix out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<EpScalar> row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.emplace_back(ch, m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

KummerGroup kummer_group(std::span<const MultElement> a, const Integer& n) {
  if (a.empty()) return {n, {}};
  auto hb = multfield::pure_hull_basis_mod_constants(a);
  return kummer_group(integral_rows(hb.E, hb.hull.rank()), n, a[0].field().p());
}

IntMatrix residues(const EpMatrix& m, const Integer& n, std::size_t cols) {
  IntMatrix out(m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != cols) fail(ErrorKind::dimension_mismatch, "ragged exponent matrix");
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m[i][j].residue_mod(n);
  }
  return out;
}

TwistSubgroup::TwistSubgroup(Integer n, std::size_t k, const std::vector<std::vector<Integer>>& generators)
    : n_(std::move(n)), k_(k) {
  if (n_ <= 0) fail(ErrorKind::invalid_argument, "level must be positive");
  IntMatrix rows(0, k_);
  for (const auto& g : generators) {
    if (g.size() != k_) fail(ErrorKind::dimension_mismatch, "generator has the wrong length");
    std::vector<Integer> r;
    bool zero = true;
    for (const auto& x : g) {
      r.push_back(mod(x, n_));
      zero = zero && r.back() == 0;
    }
    rows.append_row(r);
    if (!zero) gens_.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < k_; ++i) {
    std::vector<Integer> e(k_, Integer(0));
    e[i] = n_;
    rows.append_row(e);
  }
  hnf_ = hnf(rows);
}

bool TwistSubgroup::contains(std::span<const Integer> v) const {
  if (v.size() != k_) fail(ErrorKind::dimension_mismatch, "twist has the wrong length");
  if (k_ == 0) return true;
  std::vector<Rational> target;
  for (const auto& x : v) target.emplace_back(mod(x, n_));
  bool ok = false;
  auto x = solve_left(hnf_, target, ok);
  if (!ok) return false;
  for (const auto& q : x)
    if (q.get_den() != 1) return false;
  return true;
}

Integer TwistSubgroup::order() const {
  Integer index = 1;
  for (std::size_t i = 0; i < hnf_.rows(); ++i)
    for (std::size_t j = 0; j < k_; ++j)
      if (hnf_(i, j) != 0) {
        index *= hnf_(i, j);
        break;
      }
  return pow(n_, static_cast<unsigned>(k_)) / index;
}

bool TwistSubgroup::is_subgroup_of(const TwistSubgroup& other) const {
  if (other.n_ != n_ || other.k_ != k_) fail(ErrorKind::dimension_mismatch, "subgroups at different levels");
  for (const auto& g : gens_)
    if (!other.contains(g)) return false;
  return true;
}

TwistSubgroup TwistSubgroup::reduce(const Integer& d) const {
  if (d <= 0 || n_ % d != 0) fail(ErrorKind::invalid_argument, "reduction level must divide the level");
  return TwistSubgroup(d, k_, gens_);
}

TwistSubgroup realizable_twists(const IntMatrix& e_a, const IntMatrix& e_b, const Integer& n) {
  const std::size_t r = e_b.cols();
  if (e_a.rows() > 0 && e_a.cols() != r) fail(ErrorKind::dimension_mismatch, "E_a and E_b have different widths");
  std::vector<std::vector<Integer>> kernel;
  if (e_a.rows() == 0) {
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Integer> e(r, Integer(0));
      e[i] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    // With U E_a V = D and chi = V y, the condition is d_i y_i = 0 mod n.
    auto s = snf(e_a);
    for (std::size_t i = 0; i < r; ++i) {
      Integer scale = i < s.invariants.size() ? Integer(n / gcd(n, s.invariants[i])) : Integer(1);
      std::vector<Integer> chi(r);
      for (std::size_t t = 0; t < r; ++t) chi[t] = s.V(t, i) * scale;
      kernel.push_back(std::move(chi));
    }
  }
  IntMatrix chis(0, r);
  for (const auto& c : kernel) chis.append_row(c);
  std::vector<std::vector<Integer>> image;
  IntMatrix bt = e_b.transpose();
  for (std::size_t i = 0; i < chis.rows(); ++i) image.push_back(chis.row(i) * bt);
  return TwistSubgroup(n, e_b.rows(), image);
}

namespace {

bool kills(const EpLattice& span, const EpLattice& hull, const Integer& d) {
  for (const auto& b : hull.basis_vectors())
    if (!epmod::contains(span, EpScalar(span.characteristic(), d) * b)) return false;
  return true;
}

bool certify_minimal(const EpLattice& span, const EpLattice& hull, const Integer& m) {
  for (const auto& d : divisors(m))
    if (d != m && kills(span, hull, d)) return false;
  return kills(span, hull, m);
}

}  // namespace

DeterminationConstant determination_constant(const IntMatrix& e_a, const IntMatrix& e_b, std::uint64_t p) {
  const std::size_t r = e_b.rows() > 0 ? e_b.cols() : e_a.cols();
  if ((e_a.rows() > 0 && e_a.cols() != r) || (e_b.rows() > 0 && e_b.cols() != r))
    fail(ErrorKind::dimension_mismatch, "E_a and E_b have different widths");
  if (e_a.rows() + e_b.rows() != r) fail(ErrorKind::dimension_mismatch, "[E_a; E_b] must be square");
  Characteristic ch(p);
  DeterminationConstant dc;
  dc.characteristic = ch;
  dc.e_a = to_ep(e_a, ch);
  dc.e_b = to_ep(e_b, ch);
  dc.rank = r;
  IntMatrix all = e_a;
  for (std::size_t i = 0; i < e_b.rows(); ++i) all.append_row(e_b.row(i));
  if (all.rows() == 0) {
    dc.minimal = true;
    return dc;
  }
  auto span = epmod::canonical_lattice(ch, all);
  if (span.rank() != r) fail(ErrorKind::dependent, "(a, b) is dependent");
  auto full = EpLattice::full(ch, r);
  dc.m = epmod::saturation_index(span, full).exponent;
  dc.minimal = certify_minimal(span, full, dc.m);
  return dc;
}

DeterminationConstant determination_constant(std::span<const MultElement> a, std::span<const MultElement> b) {
  std::vector<MultElement> c(a.begin(), a.end());
  c.insert(c.end(), b.begin(), b.end());
  DeterminationConstant dc;
  if (c.empty()) {
    dc.minimal = true;
    return dc;
  }
  auto hb = multfield::pure_hull_basis_mod_constants(c);
  dc.characteristic = hb.context.characteristic;
  dc.rank = hb.hull.rank();
  dc.m = hb.m;
  dc.e_a.assign(hb.E.begin(), hb.E.begin() + static_cast<std::ptrdiff_t>(a.size()));
  dc.e_b.assign(hb.E.begin() + static_cast<std::ptrdiff_t>(a.size()), hb.E.end());
  dc.minimal = certify_minimal(hb.span, hb.hull, dc.m);
  return dc;
}

bool DeterminationReport::all_ok() const {
  for (const auto& l : levels)
    if (!l.ok) return false;
  return true;
}

DeterminationReport check_finite_determination(const DeterminationConstant& dc, std::uint64_t n_max,
                                               std::optional<std::uint64_t> seed) {
  DeterminationReport report;
  report.m = dc.m;
  report.minimal = dc.minimal;
  const std::uint64_t p = dc.characteristic.p();
  const std::size_t kb = dc.e_b.size();
  std::optional<Twist> sample;
  if (seed) sample = Twist::random(kb, *seed, p).scaled(dc.m);
  for (std::uint64_t level = 1; level <= n_max; ++level) {
    if (p != 0 && level % p == 0) continue;
    Integer n(static_cast<unsigned long>(level));
    LevelReport lr;
    lr.n = n;
    auto sub = realizable_twists(residues(dc.e_a, n, dc.rank), residues(dc.e_b, n, dc.rank), n);
    lr.subgroup_gens = sub.generators();
    for (std::size_t j = 0; j < kb && lr.ok; ++j) {
      std::vector<Integer> t(kb, Integer(0));
      t[j] = mod(dc.m, n);
      if (!sub.contains(t)) {
        lr.ok = false;
        lr.violating_twist = t;
      }
    }
    if (lr.ok && sample) {
      auto t = sample->at(n);
      if (!sub.contains(t)) {
        lr.ok = false;
        lr.violating_twist = t;
      }
    }
    report.levels.push_back(std::move(lr));
  }
  return report;
}

DeterminationReport check_finite_determination(std::span<const MultElement> a, std::span<const MultElement> b,
                                               std::uint64_t n_max, std::optional<std::uint64_t> seed) {
  return check_finite_determination(determination_constant(a, b), n_max, seed);
}

}  // namespace mullat::kummer
