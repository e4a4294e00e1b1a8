#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mullat/compos.hpp"
#include "mullat/kummer.hpp"
#include "mullat/matrix.hpp"
#include "mullat/multfield.hpp"

namespace mullat::cli {

using nlohmann::json;

/// Integers print as JSON numbers when they fit in 64 bits, else as strings.
json to_json(const Integer& v);
json to_json(const std::vector<Integer>& v);
json to_json(const IntMatrix& m);
json to_json(const std::vector<std::vector<Integer>>& rows);
json to_json(const epmod::EpScalar& s);
json to_json(const multfield::MultElement& e);
json to_json(const compos::Scenario& s);
json to_json(const compos::ProbeReport& r);
json to_json(const kummer::DeterminationReport& r);

Integer integer_from_json(const json& j);
multfield::MultElement mult_element_from_json(const json& j, const poly::BaseField& field);
compos::Scenario scenario_from_json(const json& j, bool allow_uncovered);

}  // namespace mullat::cli
