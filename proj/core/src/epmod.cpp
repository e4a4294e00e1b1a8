#include "mullat/epmod.hpp"

#include <algorithm>
#include <sstream>

#include "mullat/error.hpp"
#include "mullat/normal_form.hpp"

namespace mullat::epmod {

namespace {

Integer p_integer(Characteristic ch) { return Integer(static_cast<unsigned long>(ch.p())); }

void require_same(Characteristic a, Characteristic b) {
  if (a != b) fail(ErrorKind::characteristic_mismatch, "E_p characteristics differ");
}

void require_compatible(const EpLattice& a, const EpLattice& b) {
  require_same(a.characteristic(), b.characteristic());
  if (a.ambient_dim() != b.ambient_dim()) fail(ErrorKind::dimension_mismatch, "ambient dimensions differ");
}

IntMatrix stack(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

IntMatrix rows_of(std::size_t ambient, std::span<const ExponentVector> vs) {
  IntMatrix m(0, ambient);
  for (const auto& v : vs) {
    if (v.dim() != ambient) fail(ErrorKind::dimension_mismatch, "generator has wrong dimension");
    m.append_row(v.integral_scaling().second);
  }
  return m;
}

// Integer coordinates of the rows of `sub` in the basis of `lattice`;
// both are integer lattices and sub lies inside lattice over Z.
IntMatrix coordinates(const IntMatrix& sub, const IntMatrix& lattice) {
  IntMatrix c(0, lattice.rows());
  for (std::size_t i = 0; i < sub.rows(); ++i) {
    std::vector<Rational> rhs(sub.cols());
    for (std::size_t j = 0; j < sub.cols(); ++j) rhs[j] = sub(i, j);
    bool ok = false;
    auto x = solve_left(lattice, rhs, ok);
    if (!ok) fail(ErrorKind::not_contained, "row is outside the lattice");
    std::vector<Integer> row(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j].get_den() != 1) fail(ErrorKind::not_contained, "row is outside the integer lattice");
      row[j] = x[j].get_num();
    }
    c.append_row(row);
  }
  return c;
}

}  // namespace

Characteristic::Characteristic(std::uint64_t p) : p_(p) {
  if (p != 0 && !is_prime(p)) fail(ErrorKind::invalid_argument, "characteristic must be 0 or prime, got " + std::to_string(p));
}

bool Characteristic::is_unit(const Integer& n) const {
  if (n == 1 || n == -1) return true;
  if (p_ == 0 || n == 0) return false;
  return abs(strip_prime(n, p_)) == 1;
}

EpScalar::EpScalar(Characteristic ch, Integer num, unsigned p_pow) : ch_(ch), num_(std::move(num)), p_pow_(p_pow) {
  if (ch_.is_zero() && p_pow_ != 0) fail(ErrorKind::not_in_ep, "p_pow must be 0 in characteristic 0");
  normalize();
}

void EpScalar::normalize() {
  if (num_ == 0) {
    p_pow_ = 0;
    return;
  }
  if (ch_.is_zero()) return;
  const Integer p = p_integer(ch_);
  while (p_pow_ > 0 && mpz_divisible_p(num_.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), p.get_mpz_t());
    --p_pow_;
  }
}

EpScalar EpScalar::from_rational(Characteristic ch, const Rational& q) {
  Integer den = q.get_den();
  if (den == 1) return EpScalar(ch, q.get_num(), 0);
  if (ch.is_zero()) fail(ErrorKind::not_in_ep, to_string(q) + " is not an integer");
  auto [k, rest] = split_prime_power(den, p_integer(ch));
  if (rest != 1) fail(ErrorKind::not_in_ep, to_string(q) + " has a denominator prime to p");
  return EpScalar(ch, q.get_num(), k);
}

Rational EpScalar::to_rational() const {
  if (p_pow_ == 0) return Rational(num_);
  Rational r(num_, pow(p_integer(ch_), p_pow_));
  r.canonicalize();
  return r;
}

Integer EpScalar::residue_mod(const Integer& n) const {
  if (n == 1) return 0;
  Integer r = mod(num_, n);
  if (p_pow_ == 0) return r;
  Integer inv = inverse_mod(pow(p_integer(ch_), p_pow_), n);
  return mod(r * inv, n);
}

EpScalar EpScalar::operator-() const { return EpScalar(ch_, -num_, p_pow_); }

EpScalar operator+(const EpScalar& a, const EpScalar& b) {
  require_same(a.ch_, b.ch_);
  if (a.ch_.is_zero()) return EpScalar(a.ch_, a.num_ + b.num_, 0);
  const Integer p = p_integer(a.ch_);
  unsigned k = std::max(a.p_pow_, b.p_pow_);
  Integer n = a.num_ * pow(p, k - a.p_pow_) + b.num_ * pow(p, k - b.p_pow_);
  return EpScalar(a.ch_, std::move(n), k);
}

EpScalar operator-(const EpScalar& a, const EpScalar& b) { return a + (-b); }

EpScalar operator*(const EpScalar& a, const EpScalar& b) {
  require_same(a.ch_, b.ch_);
  return EpScalar(a.ch_, a.num_ * b.num_, a.p_pow_ + b.p_pow_);
}

std::string to_string(const EpScalar& s) { return to_string(s.to_rational()); }

ExponentVector::ExponentVector(Characteristic ch, std::size_t dim) : ch_(ch), entries_(dim, EpScalar(ch, 0)) {}

ExponentVector::ExponentVector(Characteristic ch, std::vector<EpScalar> entries) : ch_(ch), entries_(std::move(entries)) {
  for (const auto& e : entries_) require_same(e.characteristic(), ch_);
}

ExponentVector ExponentVector::from_integers(Characteristic ch, std::span<const Integer> values) {
  std::vector<EpScalar> e;
  e.reserve(values.size());
  for (const auto& v : values) e.emplace_back(ch, v);
  return ExponentVector(ch, std::move(e));
}

ExponentVector ExponentVector::from_integers(Characteristic ch, std::initializer_list<long> values) {
  std::vector<EpScalar> e;
  for (long v : values) e.emplace_back(ch, Integer(v));
  return ExponentVector(ch, std::move(e));
}

ExponentVector ExponentVector::from_rationals(Characteristic ch, std::span<const Rational> values) {
  std::vector<EpScalar> e;
  e.reserve(values.size());
  for (const auto& v : values) e.push_back(EpScalar::from_rational(ch, v));
  return ExponentVector(ch, std::move(e));
}

bool ExponentVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const EpScalar& s) { return s.is_zero(); });
}

std::vector<Rational> ExponentVector::to_rationals() const {
  std::vector<Rational> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.to_rational());
  return out;
}

std::pair<unsigned, std::vector<Integer>> ExponentVector::integral_scaling() const {
  unsigned k = 0;
  for (const auto& e : entries_) k = std::max(k, e.p_pow());
  std::vector<Integer> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(k == 0 ? e.num() : e.num() * pow(p_integer(ch_), k - e.p_pow()));
  return {k, std::move(out)};
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::dimension_mismatch, "vector sum");
  ExponentVector out = a;
  for (std::size_t i = 0; i < a.dim(); ++i) out.entries_[i] = a.entries_[i] + b.entries_[i];
  return out;
}

ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::dimension_mismatch, "vector difference");
  ExponentVector out = a;
  for (std::size_t i = 0; i < a.dim(); ++i) out.entries_[i] = a.entries_[i] - b.entries_[i];
  return out;
}

ExponentVector operator*(const EpScalar& s, const ExponentVector& v) {
  ExponentVector out = v;
  for (auto& e : out.entries_) e = s * e;
  return out;
}

std::string to_string(const ExponentVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << to_string(v[i]);
  os << ')';
  return os.str();
}

EpLattice EpLattice::zero(Characteristic ch, std::size_t ambient) { return canonical_lattice(ch, IntMatrix(0, ambient)); }

EpLattice EpLattice::full(Characteristic ch, std::size_t ambient) {
  return canonical_lattice(ch, IntMatrix::identity(ambient));
}

ExponentVector EpLattice::basis_vector(std::size_t i) const {
  return ExponentVector::from_integers(ch_, basis_.row(i));
}

std::vector<ExponentVector> EpLattice::basis_vectors() const {
  std::vector<ExponentVector> out;
  for (std::size_t i = 0; i < rank(); ++i) out.push_back(basis_vector(i));
  return out;
}

EpLattice canonical_lattice(Characteristic ch, const IntMatrix& rows) {
  IntMatrix h = hnf(rows);
  if (!ch.is_zero() && h.rows() > 0) {
    // Replace each elementary divisor by its p-free part.
    SnfResult s = snf(h);
    IntMatrix w = unimodular_inverse(s.V);
    IntMatrix sat(0, rows.cols());
    for (std::size_t i = 0; i < s.invariants.size(); ++i) {
      Integer d = strip_prime(s.invariants[i], ch.p());
      std::vector<Integer> r = w.row_vector(i);
      for (auto& x : r) x *= d;
      sat.append_row(r);
    }
    h = hnf(sat);
  }
  return EpLattice(ch, rows.cols(), std::move(h));
}

EpLattice canonical_lattice(Characteristic ch, std::size_t ambient_dim, std::span<const ExponentVector> generators) {
  for (const auto& g : generators) require_same(g.characteristic(), ch);
  return canonical_lattice(ch, rows_of(ambient_dim, generators));
}

std::optional<std::vector<EpScalar>> member(const ExponentVector& v, const EpLattice& lattice) {
  require_same(v.characteristic(), lattice.characteristic());
  if (v.dim() != lattice.ambient_dim()) fail(ErrorKind::dimension_mismatch, "vector and lattice dimensions differ");
  const Characteristic ch = lattice.characteristic();
  std::vector<Rational> rhs = v.to_rationals();
  bool ok = false;
  auto x = solve_left(lattice.basis(), rhs, ok);
  if (!ok) return std::nullopt;
  std::vector<EpScalar> coeffs;
  coeffs.reserve(x.size());
  for (const auto& q : x) {
    Integer den = q.get_den();
    if (den != 1 && (ch.is_zero() || split_prime_power(den, p_integer(ch)).second != 1)) return std::nullopt;
    coeffs.push_back(EpScalar::from_rational(ch, q));
  }
  return coeffs;
}

bool contains(const EpLattice& lattice, const ExponentVector& v) { return member(v, lattice).has_value(); }

bool is_sublattice(const EpLattice& a, const EpLattice& m) {
  require_compatible(a, m);
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!contains(m, a.basis_vector(i))) return false;
  return true;
}

std::size_t rank(const EpLattice& lattice) { return lattice.rank(); }

EpLattice sum(const EpLattice& a, const EpLattice& b) {
  require_compatible(a, b);
  return canonical_lattice(a.characteristic(), stack(a.basis(), b.basis()));
}

EpLattice intersect(const EpLattice& a, const EpLattice& b) {
  require_compatible(a, b);
  const std::size_t k = a.ambient_dim();
  // Rows [a | a] and [b | 0]; echelon rows with a zero left half span a ∩ b.
  IntMatrix block(0, 2 * k);
  std::vector<Integer> row(2 * k);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < k; ++j) row[j] = row[k + j] = a.basis()(i, j);
    block.append_row(row);
  }
  for (std::size_t i = 0; i < b.rank(); ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      row[j] = b.basis()(i, j);
      row[k + j] = 0;
    }
    block.append_row(row);
  }
  IntMatrix h = hnf(block);
  IntMatrix out(0, k);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool left_zero = true;
    for (std::size_t j = 0; j < k && left_zero; ++j) left_zero = h(i, j) == 0;
    if (!left_zero) continue;
    std::vector<Integer> r(h.row(i).begin() + static_cast<std::ptrdiff_t>(k), h.row(i).end());
    out.append_row(r);
  }
  return canonical_lattice(a.characteristic(), out);
}

EpLattice rational_saturation(const EpLattice& a) {
  if (a.rank() == 0) return a;
  SnfResult s = snf(a.basis());
  IntMatrix w = unimodular_inverse(s.V);
  return canonical_lattice(a.characteristic(), w.select_rows(0, s.invariants.size()));
}

EpLattice pure_hull(const EpLattice& a, const EpLattice& m) {
  require_compatible(a, m);
  if (!is_sublattice(a, m)) fail(ErrorKind::not_contained, "A is not contained in M");
  return intersect(rational_saturation(a), m);
}

bool is_pure(const EpLattice& a, const EpLattice& m) { return pure_hull(a, m) == a; }

SaturationIndex saturation_index(const EpLattice& a, const EpLattice& m) {
  EpLattice hull = pure_hull(a, m);
  SaturationIndex out;
  if (a.rank() == 0) return out;
  IntMatrix c = coordinates(a.basis(), hull.basis());
  SnfResult s = snf(c);
  for (const auto& d : s.invariants) {
    Integer f = strip_prime(d, a.characteristic().p());
    out.index *= f;
    out.exponent = lcm(out.exponent, f);
    out.invariant_factors.push_back(f);
  }
  return out;
}

Simplicity is_simple(const ExponentVector& a, const EpLattice& m) {
  if (a.is_zero()) fail(ErrorKind::zero_input, "simplicity of the zero vector");
  if (!contains(m, a)) fail(ErrorKind::not_contained, "vector is not in M");
  const Characteristic ch = m.characteristic();
  std::vector<ExponentVector> gens{a};
  EpLattice span = canonical_lattice(ch, m.ambient_dim(), gens);
  SaturationIndex sat = saturation_index(span, m);
  if (sat.index == 1) return {};
  Integer l = factor_integer(sat.index).front().first;
  std::vector<EpScalar> root;
  for (const auto& e : a.entries()) {
    if (!mpz_divisible_p(e.num().get_mpz_t(), l.get_mpz_t()))
      fail(ErrorKind::invalid_argument, "internal: witness prime does not divide the vector");
    root.emplace_back(ch, e.num() / l, e.p_pow());
  }
  ExponentVector alpha(ch, std::move(root));
  if (!contains(m, alpha)) fail(ErrorKind::invalid_argument, "internal: witness root is not in M");
  return {false, SimplicityWitness{l, std::move(alpha)}};
}

FreeExtension free_basis_extension(const EpLattice& a, std::span<const ExponentVector> lifts, const EpLattice& m) {
  require_compatible(a, m);
  if (!is_sublattice(a, m)) fail(ErrorKind::not_contained, "A is not contained in M");
  for (const auto& l : lifts)
    if (!contains(m, l)) fail(ErrorKind::not_contained, "lift " + to_string(l) + " is not in M");
  IntMatrix rows = stack(a.basis(), rows_of(a.ambient_dim(), lifts));
  EpLattice span = canonical_lattice(a.characteristic(), rows);
  if (!is_pure(a, span)) fail(ErrorKind::quotient_torsion, "a combination of the lifts is divisible into A");
  if (span.rank() != a.rank() + lifts.size()) fail(ErrorKind::dependent, "lifts are dependent modulo A");
  FreeExtension out{a.basis_vectors(), span};
  out.basis.insert(out.basis.end(), lifts.begin(), lifts.end());
  return out;
}

std::vector<Integer> reduce_modulo(std::span<const Integer> v, const EpLattice& lattice) {
  std::vector<Integer> x(v.begin(), v.end());
  const IntMatrix& b = lattice.basis();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::size_t piv = 0;
    while (b(i, piv) == 0) ++piv;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x[piv].get_mpz_t(), b(i, piv).get_mpz_t());
    if (q == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] -= q * b(i, j);
  }
  return x;
}

QuotientHull quotfree_basis(const EpLattice& m, const EpLattice& b, const EpLattice& a,
                            std::span<const ExponentVector> c) {
  require_compatible(m, b);
  require_compatible(m, a);
  const Characteristic ch = m.characteristic();
  if (!is_pure(b, m)) fail(ErrorKind::not_pure, "B is not pure in M");
  if (!is_sublattice(a, b)) fail(ErrorKind::not_contained, "A is not contained in B");
  for (const auto& v : c)
    if (!contains(m, v)) fail(ErrorKind::not_contained, "c is not in M");
  EpLattice c_span = canonical_lattice(ch, m.ambient_dim(), c);
  EpLattice bc = sum(b, c_span);
  if (bc.rank() != b.rank() + c.size()) fail(ErrorKind::dependent, "c is not independent over B");

  EpLattice hull = pure_hull(bc, m);
  // B is pure in the hull, so its coordinates extend to a basis of the hull.
  IntMatrix coords = coordinates(b.basis(), hull.basis());
  IntMatrix w = unimodular_inverse(snf(coords).V);
  QuotientHull out;
  for (std::size_t i = b.rank(); i < hull.rank(); ++i) {
    std::vector<Integer> rep = w.row(i) * hull.basis();
    rep = reduce_modulo(rep, b);
    out.basis.push_back(ExponentVector::from_integers(ch, rep));
  }
  EpLattice with_a = pure_hull(sum(a, c_span), m);
  out.hypothesis_holds = is_sublattice(hull, sum(with_a, b));
  return out;
}

}  // namespace mullat::epmod
