#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mullat/series.hpp"

namespace mullat::puiseux {

/// Polynomial in y with series coefficients, lowest degree first.
using SeriesPoly = std::vector<PuiseuxSeries>;

struct PuiseuxRoot {
  /// Known terms of the root; trunc bounds how far every root in this
  /// cluster agrees with it.
  PuiseuxSeries series;
  unsigned multiplicity = 1;
  /// Number of conjugate roots represented, the degree of any coefficient
  /// extension adjoined on the way.
  unsigned conjugates = 1;
};

/// Roots of f modulo t^prec: for every root r, f(r) vanishes to order prec
/// whatever the unknown tail of r is. Multiplicities times conjugates sum to
/// deg f in characteristic 0.
std::vector<PuiseuxRoot> newton_puiseux(const SeriesPoly& f, const Rational& prec);

/// f(y) by Horner's rule.
PuiseuxSeries evaluate(const SeriesPoly& f, const PuiseuxSeries& y);
/// Coefficients of f(y + s).
SeriesPoly taylor_shift(const SeriesPoly& f, const PuiseuxSeries& s);
/// f at the root, expanded around its known terms so that the unknown tail
/// only enters through the derivatives.
PuiseuxSeries residual(const SeriesPoly& f, const PuiseuxRoot& root);
bool vanishes_to(const PuiseuxSeries& s, const Rational& prec);

/// Reads a polynomial in y whose coefficients are expressions in t, e.g.
/// "y^2 - t^(1/3)*y + 1/(1-t)". Coefficients are truncated at trunc if given.
SeriesPoly parse_series_poly(const CoeffField& field, std::string_view text,
                             const std::optional<Rational>& trunc = std::nullopt);

std::string to_string(const SeriesPoly& f);

}  // namespace mullat::puiseux
