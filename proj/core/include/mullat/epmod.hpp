#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mullat/integer.hpp"
#include "mullat/matrix.hpp"

/// Finitely generated torsion-free modules over E_p (Z when p = 0, Z[1/p]
/// otherwise), realized as lattices inside Q^k.
namespace mullat::epmod {

using mullat::to_string;

/// 0 or a prime; checked on construction.
class Characteristic {
 public:
  Characteristic() = default;
  explicit Characteristic(std::uint64_t p);

  std::uint64_t p() const noexcept { return p_; }
  bool is_zero() const noexcept { return p_ == 0; }
  /// True iff n is a unit of E_p.
  bool is_unit(const Integer& n) const;

  friend bool operator==(Characteristic, Characteristic) = default;

 private:
  std::uint64_t p_ = 0;
};

/// num / p^p_pow, normalized so that p does not divide num unless p_pow = 0.
class EpScalar {
 public:
  EpScalar() = default;
  EpScalar(Characteristic ch, Integer num, unsigned p_pow = 0);

  /// Fails with not_in_ep when q's denominator is not a power of p.
  static EpScalar from_rational(Characteristic ch, const Rational& q);

  Characteristic characteristic() const noexcept { return ch_; }
  const Integer& num() const noexcept { return num_; }
  unsigned p_pow() const noexcept { return p_pow_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return p_pow_ == 0; }
  Rational to_rational() const;
  /// Image in Z/n; requires gcd(n, p) = 1.
  Integer residue_mod(const Integer& n) const;

  EpScalar operator-() const;
  friend EpScalar operator+(const EpScalar& a, const EpScalar& b);
  friend EpScalar operator-(const EpScalar& a, const EpScalar& b);
  friend EpScalar operator*(const EpScalar& a, const EpScalar& b);
  friend bool operator==(const EpScalar& a, const EpScalar& b) {
    return a.num_ == b.num_ && a.p_pow_ == b.p_pow_;
  }
  friend bool operator<(const EpScalar& a, const EpScalar& b) { return a.to_rational() < b.to_rational(); }

 private:
  void normalize();

  Characteristic ch_;
  Integer num_ = 0;
  unsigned p_pow_ = 0;
};

std::string to_string(const EpScalar& s);

/// Fixed-length tuple of E_p scalars.
class ExponentVector {
 public:
  ExponentVector() = default;
  ExponentVector(Characteristic ch, std::size_t dim);
  ExponentVector(Characteristic ch, std::vector<EpScalar> entries);

  static ExponentVector from_integers(Characteristic ch, std::span<const Integer> values);
  static ExponentVector from_integers(Characteristic ch, std::initializer_list<long> values);
  static ExponentVector from_rationals(Characteristic ch, std::span<const Rational> values);

  Characteristic characteristic() const noexcept { return ch_; }
  std::size_t dim() const noexcept { return entries_.size(); }
  const EpScalar& operator[](std::size_t i) const { return entries_[i]; }
  EpScalar& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<EpScalar>& entries() const noexcept { return entries_; }
  bool is_zero() const;

  std::vector<Rational> to_rationals() const;
  /// Smallest j with p^j * v integral, and that integral vector.
  std::pair<unsigned, std::vector<Integer>> integral_scaling() const;

  friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
  friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b);
  friend ExponentVector operator*(const EpScalar& s, const ExponentVector& v);
  friend bool operator==(const ExponentVector& a, const ExponentVector& b) { return a.entries_ == b.entries_; }

 private:
  Characteristic ch_;
  std::vector<EpScalar> entries_;
};

std::string to_string(const ExponentVector& v);

/// E_p-submodule of Q^k with integral generators, stored as the unique
/// p-saturated integer lattice in row Hermite normal form.
class EpLattice {
 public:
  EpLattice() = default;

  static EpLattice zero(Characteristic ch, std::size_t ambient);
  static EpLattice full(Characteristic ch, std::size_t ambient);

  Characteristic characteristic() const noexcept { return ch_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  const IntMatrix& basis() const noexcept { return basis_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  ExponentVector basis_vector(std::size_t i) const;
  std::vector<ExponentVector> basis_vectors() const;

  friend bool operator==(const EpLattice&, const EpLattice&) = default;

 private:
  friend EpLattice canonical_lattice(Characteristic, const IntMatrix&);
  EpLattice(Characteristic ch, std::size_t ambient, IntMatrix basis)
      : ch_(ch), ambient_(ambient), basis_(std::move(basis)) {}

  Characteristic ch_;
  std::size_t ambient_ = 0;
  IntMatrix basis_;
};

EpLattice canonical_lattice(Characteristic ch, const IntMatrix& rows);
EpLattice canonical_lattice(Characteristic ch, std::size_t ambient_dim, std::span<const ExponentVector> generators);

/// E_p coefficients of v in L's basis, or nullopt when v is not a member.
std::optional<std::vector<EpScalar>> member(const ExponentVector& v, const EpLattice& lattice);
bool contains(const EpLattice& lattice, const ExponentVector& v);
bool is_sublattice(const EpLattice& a, const EpLattice& m);

std::size_t rank(const EpLattice& lattice);

EpLattice sum(const EpLattice& a, const EpLattice& b);
EpLattice intersect(const EpLattice& a, const EpLattice& b);

/// Q-span of the lattice intersected with Z^k.
EpLattice rational_saturation(const EpLattice& a);

/// {x in M : n x in A for some nonzero n in E_p}; requires A within M.
EpLattice pure_hull(const EpLattice& a, const EpLattice& m);
bool is_pure(const EpLattice& a, const EpLattice& m);

struct SimplicityWitness {
  Integer prime;
  ExponentVector root;  ///< prime * root == a
};

struct Simplicity {
  bool simple = true;
  std::optional<SimplicityWitness> witness;
};

/// Whether span{a} is pure in M; otherwise a prime l != p and l-th root of a in M.
Simplicity is_simple(const ExponentVector& a, const EpLattice& m);

struct SaturationIndex {
  Integer index = 1;
  std::vector<Integer> invariant_factors;  ///< of A inside its pure hull, p-parts stripped
  Integer exponent = 1;                    ///< lcm of the factors; exponent * hull lies in A
};

SaturationIndex saturation_index(const EpLattice& a, const EpLattice& m);

struct FreeExtension {
  std::vector<ExponentVector> basis;  ///< basis rows of A followed by the lifts
  EpLattice span;
};

/// Extends a basis of A by lifts of a free basis of span(A + lifts) / A.
FreeExtension free_basis_extension(const EpLattice& a, std::span<const ExponentVector> lifts, const EpLattice& m);

struct QuotientHull {
  /// Coset representatives (reduced modulo B) of a basis of the pure hull of
  /// span(c mod B) in M / B.
  std::vector<ExponentVector> basis;
  /// pure_hull(span(c) + B, M) is contained in pure_hull(span(c) + A, M) + B.
  bool hypothesis_holds = false;
};

QuotientHull quotfree_basis(const EpLattice& m, const EpLattice& b, const EpLattice& a,
                            std::span<const ExponentVector> c);

/// Representative of v modulo the integer lattice spanned by L's basis.
std::vector<Integer> reduce_modulo(std::span<const Integer> v, const EpLattice& lattice);

}  // namespace mullat::epmod
