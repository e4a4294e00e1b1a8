#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mullat {

enum class ErrorKind {
  invalid_argument,
  parse_error,
  dimension_mismatch,
  characteristic_mismatch,
  not_contained,
  zero_input,
  reducible,
  not_in_ep,
  dependent,
  quotient_torsion,
  not_pure,
  not_in_valuation_ring,
  zero_series,
  insufficient_precision,
  inseparable_step,
  field_not_closed,
  identity_fails,
  place_undefined,
  place_moves_coefficient,
  uncovered_variable,
  empty_blocks,
  foreign_variable,
  no_evaluation_point,
};

std::string_view to_string(ErrorKind kind);

/// Domain error carrying a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace mullat
