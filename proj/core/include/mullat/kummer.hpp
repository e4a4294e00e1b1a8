#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mullat/matrix.hpp"
#include "mullat/multfield.hpp"

/// Division systems, Kummer groups and finite-determination constants. Roots
/// of unity are never materialized: Galois data lives in Z/n linear algebra.
namespace mullat::kummer {

using mullat::to_string;
using multfield::to_string;

using multfield::MultElement;

/// Compatible family of vectors tau(n) in (Z/n)^k with tau(n) = tau(d) mod d
/// for d | n and tau(1) = 0. Levels are taken prime to the characteristic.
class Twist {
 public:
  /// The reference (zero) twist.
  static Twist zero(std::size_t k, std::uint64_t p = 0);
  /// A fixed vector of integers reduced at every level.
  static Twist constant(std::vector<Integer> v, std::uint64_t p = 0);
  /// Random compatible twist built from l-adic digits; deterministic in seed.
  static Twist random(std::size_t k, std::uint64_t seed, std::uint64_t p = 0);

  std::size_t dim() const noexcept { return k_; }
  std::uint64_t characteristic() const noexcept { return p_; }
  /// Components in [0, n') where n' is n with its p-part removed.
  std::vector<Integer> at(const Integer& n) const;
  /// Entrywise multiple; compatibility is preserved.
  Twist scaled(const Integer& s) const;

 private:
  enum class Kind { constant, random };
  Kind kind_ = Kind::constant;
  std::size_t k_ = 0;
  std::uint64_t p_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Integer> values_;
  Integer scale_ = 1;
};

struct DivisionSystemSpec {
  std::vector<MultElement> base;
  Twist twist;
};

DivisionSystemSpec division_system(std::vector<MultElement> base, std::optional<Twist> twist = std::nullopt);

/// Formal product of roots: base exponents q (row of the applied matrix),
/// the resulting rational exponents on irreducibles, and a root of unity
/// exp(2 pi i r) with r in [0, 1).
struct FormalElement {
  std::vector<Rational> base_exponents;
  multfield::ExponentMatrix context;  ///< index only; rows unused
  std::vector<Rational> exponents;    ///< over context.index
  std::vector<Rational> constant_exponents;  ///< exponent on each base constant
  Rational root_of_unity = 0;

  /// The element when every exponent is in E_p and the root of unity is 1.
  std::optional<MultElement> materialize(const std::vector<MultElement>& base) const;
};

std::string to_string(const FormalElement& e, const std::vector<MultElement>& base);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// c^M for an l x k rational matrix, computed through the chosen roots.
std::vector<FormalElement> power_by_matrix(const DivisionSystemSpec& ds, const RationalMatrix& m);

/// Applies an integer matrix to a tuple of formal elements.
std::vector<FormalElement> transform(std::span<const FormalElement> xs, const IntMatrix& m);

struct KummerGroup {
  Integer level;
  std::vector<Integer> invariants;  ///< ascending, each dividing the level
  Integer order() const;
};

/// span(rows of E) / (span(rows of E) ∩ n Z^r) where E expresses a in a basis
/// of a pure Gamma. For p > 0 the p-part of n is removed first.
KummerGroup kummer_group(const IntMatrix& e_a, const Integer& n, std::uint64_t p = 0);
/// Same, with Gamma the pure hull of span(a) modulo constants.
KummerGroup kummer_group(std::span<const MultElement> a, const Integer& n);

/// Subgroup of (Z/n)^k, stored as the HNF of its preimage in Z^k.
class TwistSubgroup {
 public:
  TwistSubgroup(Integer n, std::size_t k, const std::vector<std::vector<Integer>>& generators);

  const Integer& level() const noexcept { return n_; }
  std::size_t dim() const noexcept { return k_; }
  const IntMatrix& lattice() const noexcept { return hnf_; }
  /// Generators reduced into [0, n), zero vectors dropped.
  const std::vector<std::vector<Integer>>& generators() const noexcept { return gens_; }
  bool contains(std::span<const Integer> v) const;
  Integer order() const;
  bool is_subgroup_of(const TwistSubgroup& other) const;
  /// Image under reduction to level d (d | n).
  TwistSubgroup reduce(const Integer& d) const;

 private:
  Integer n_;
  std::size_t k_;
  IntMatrix hnf_;
  std::vector<std::vector<Integer>> gens_;
};

/// { E_b chi mod n : chi in (Z/n)^r, E_a chi = 0 mod n }; E_a and E_b have r columns.
TwistSubgroup realizable_twists(const IntMatrix& e_a, const IntMatrix& e_b, const Integer& n);

using EpMatrix = std::vector<std::vector<epmod::EpScalar>>;

/// Entrywise images in Z/n (n prime to p) as an integer matrix with `cols` columns.
IntMatrix residues(const EpMatrix& m, const Integer& n, std::size_t cols);

struct DeterminationConstant {
  epmod::Characteristic characteristic;
  Integer m = 1;
  EpMatrix e_a;  ///< a in the saturated Gamma basis (rows)
  EpMatrix e_b;
  std::size_t rank = 0;  ///< rank of Gamma
  bool minimal = false;  ///< no proper divisor d of m has d Gamma inside span(a, b)
};

/// Lattice version: [E_a; E_b] must be square and nonsingular, expressing
/// (a, b) in a basis of Gamma = Z^r.
DeterminationConstant determination_constant(const IntMatrix& e_a, const IntMatrix& e_b, std::uint64_t p = 0);
DeterminationConstant determination_constant(std::span<const MultElement> a, std::span<const MultElement> b);

struct LevelReport {
  Integer n;
  bool ok = true;
  std::vector<std::vector<Integer>> subgroup_gens;
  std::vector<Integer> violating_twist;  ///< set when ok is false
};

struct DeterminationReport {
  Integer m = 1;
  bool minimal = false;
  std::vector<LevelReport> levels;
  bool all_ok() const;
};

/// For each level n <= n_max (prime to p), checks m (Z/n)^{|b|} ⊆ realizable
/// twists; with a seed also checks a sampled division system agreeing with the
/// reference at level m.
DeterminationReport check_finite_determination(const DeterminationConstant& dc, std::uint64_t n_max,
                                               std::optional<std::uint64_t> seed = std::nullopt);
DeterminationReport check_finite_determination(std::span<const MultElement> a, std::span<const MultElement> b,
                                               std::uint64_t n_max, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace mullat::kummer
