#pragma once

#include <map>
#include <string>

#include "mullat/multfield.hpp"

namespace mullat::puiseux {

using multfield::MultElement;

struct DescentReport {
  MultElement pi_b;
  MultElement pi_alpha;
  /// alpha / pi(alpha), the root of b modulo pi(b).
  MultElement quotient;
  /// pi(b) * quotient^m == b as field elements.
  bool verified = false;
};

/// Given coefficient * alpha^m = b, applies the place (which must fix every
/// variable of the coefficient) and returns the descended data.
DescentReport descend_root(const MultElement& b, const MultElement& alpha, const MultElement& coefficient,
                           unsigned m, const std::map<std::string, Rational>& place);

std::string to_string(const DescentReport& r);

}  // namespace mullat::puiseux
