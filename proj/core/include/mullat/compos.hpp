#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mullat/multfield.hpp"

/// Composites of independent systems in the factor-support model: the
/// multiplicative group of Q(B) or F_p(B) modulo the product of the groups of
/// the block subfields, where "lives in block i" means "every variable of
/// every irreducible factor lies in B_i".
namespace mullat::compos {

using mullat::to_string;
using multfield::to_string;

using multfield::BaseField;
using multfield::EpScalar;
using multfield::Irreducible;
using multfield::MultElement;

struct Scenario {
  BaseField field;
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> blocks;
  /// False only for scenarios built with allow_uncovered.
  bool covering = true;
};

/// Validates the blocks. With allow_uncovered a non-covering configuration is
/// accepted for exploration; nothing is claimed about it.
Scenario build_scenario(std::uint64_t p, std::vector<std::string> variables,
                        std::vector<std::vector<std::string>> blocks, bool allow_uncovered = false);

/// Whether every variable of f lies in a single block.
bool single_block(const Scenario& s, const Irreducible& f);

struct CompositeClass {
  MultElement::Factors residual_factors;

  bool is_zero() const { return residual_factors.empty(); }
  friend CompositeClass operator+(const CompositeClass& a, const CompositeClass& b);
  friend bool operator==(const CompositeClass&, const CompositeClass&) = default;
};

CompositeClass class_of(const MultElement& e, const Scenario& s);
/// The class as an element with constant 1.
MultElement representative(const CompositeClass& c, const BaseField& field);
std::string to_string(const CompositeClass& c);

struct Specialization {
  std::map<std::string, Rational> assignment;
  std::vector<MultElement> elements;
};

/// Sends the variables outside keep to the smallest non-negative integers
/// (lexicographically, in scenario order) at which no factor vanishes.
Specialization specialize(const Scenario& s, const std::vector<std::string>& keep, std::span<const MultElement> elems);

struct ElementProbe {
  bool simple = true;
  /// Index of the span of this class in its pure hull.
  Integer index = 1;
};

struct ProbeReport {
  multfield::ExponentMatrix context;  ///< mixed irreducibles indexing the exponents
  std::size_t rank = 0;
  std::vector<MultElement> hull_basis;
  std::vector<Integer> invariant_factors;
  Integer index = 1;
  /// Least m with m * hull inside the span of the classes.
  Integer m = 1;
  bool free = true;
  std::vector<CompositeClass> classes;
  std::vector<ElementProbe> elements;
};

ProbeReport locally_free_probe(const Scenario& s, std::span<const MultElement> elems);

std::string to_string(const ProbeReport& r);

}  // namespace mullat::compos
