#include "mullat/descent.hpp"

#include "mullat/error.hpp"

namespace mullat::puiseux {

using multfield::to_string;

DescentReport descend_root(const MultElement& b, const MultElement& alpha, const MultElement& coefficient,
                           unsigned m, const std::map<std::string, Rational>& place) {
  if (m == 0) fail(ErrorKind::invalid_argument, "the root degree m must be positive");
  poly::require_same_field(b.field(), alpha.field());
  poly::require_same_field(b.field(), coefficient.field());
  for (const auto& v : coefficient.variables())
    if (place.contains(v))
      fail(ErrorKind::place_moves_coefficient, "the place moves " + v + ", a variable of the coefficient");

  const Rational mq(m);
  if (!multfield::equal_as_functions(coefficient * multfield::pow_scalar(alpha, mq), b))
    fail(ErrorKind::identity_fails, to_string(coefficient) + " * (" + to_string(alpha) + ")^" +
                                        std::to_string(m) + " is not " + to_string(b));

  DescentReport r;
  r.pi_b = multfield::apply_place(b, place);
  r.pi_alpha = multfield::apply_place(alpha, place);
  r.quotient = alpha / r.pi_alpha;
  r.verified = multfield::equal_as_functions(r.pi_b * multfield::pow_scalar(r.quotient, mq), b);
  return r;
}

std::string to_string(const DescentReport& r) {
  return "pi(b) = " + to_string(r.pi_b) + "\npi(alpha) = " + to_string(r.pi_alpha) +
         "\nalpha/pi(alpha) = " + to_string(r.quotient) + "\nverified: " + (r.verified ? "true" : "false");
}

}  // namespace mullat::puiseux
