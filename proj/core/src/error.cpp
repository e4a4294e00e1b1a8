#include "mullat/error.hpp"

namespace mullat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::parse_error: return "parse error";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::characteristic_mismatch: return "characteristic mismatch";
    case ErrorKind::not_contained: return "not contained";
    case ErrorKind::zero_input: return "zero input";
    case ErrorKind::reducible: return "reducible";
    case ErrorKind::not_in_ep: return "exponent not in E_p";
    case ErrorKind::dependent: return "dependent";
    case ErrorKind::quotient_torsion: return "quotient has torsion";
    case ErrorKind::not_pure: return "not pure";
    case ErrorKind::not_in_valuation_ring: return "not in valuation ring";
    case ErrorKind::zero_series: return "zero series";
    case ErrorKind::insufficient_precision: return "insufficient precision";
    case ErrorKind::inseparable_step: return "inseparable step";
    case ErrorKind::field_not_closed: return "coefficient field not closed";
    case ErrorKind::identity_fails: return "identity fails";
    case ErrorKind::place_undefined: return "place undefined";
    case ErrorKind::place_moves_coefficient: return "place moves coefficient";
    case ErrorKind::uncovered_variable: return "uncovered variable";
    case ErrorKind::empty_blocks: return "empty block list";
    case ErrorKind::foreign_variable: return "foreign variable";
    case ErrorKind::no_evaluation_point: return "no evaluation point";
  }
  return "unknown";
}

}  // namespace mullat
