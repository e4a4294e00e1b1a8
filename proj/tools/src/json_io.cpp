#include "json_io.hpp"

#include "mullat/error.hpp"

namespace mullat::cli {

json to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json to_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const std::vector<std::vector<Integer>>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

json to_json(const IntMatrix& m) { return to_json(m.to_rows()); }

json to_json(const epmod::EpScalar& s) { return {{"num", s.num().get_str()}, {"p_pow", s.p_pow()}}; }

json to_json(const multfield::MultElement& e) {
  json factors = json::array();
  for (const auto& [f, x] : e.factors()) factors.push_back({{"poly", poly::to_string(f.poly())}, {"exp", to_json(x)}});
  return {{"constant", mullat::to_string(e.constant())}, {"factors", factors}};
}

json to_json(const compos::Scenario& s) {
  return {{"p", s.field.p()}, {"vars", s.variables}, {"blocks", s.blocks}};
}

json to_json(const compos::ProbeReport& r) {
  json basis = json::array(), classes = json::array(), elems = json::array();
  for (const auto& b : r.hull_basis) basis.push_back(multfield::to_string(b));
  for (const auto& c : r.classes) classes.push_back(compos::to_string(c));
  for (const auto& e : r.elements) elems.push_back({{"simple", e.simple}, {"index", to_json(e.index)}});
  return {{"rank", r.rank},       {"hull_basis", basis}, {"invariant_factors", to_json(r.invariant_factors)},
          {"index", to_json(r.index)}, {"m", to_json(r.m)}, {"free", r.free},
          {"classes", classes},   {"elements", elems}};
}

json to_json(const kummer::DeterminationReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    json level{{"n", to_json(l.n)}, {"ok", l.ok}, {"subgroup_gens", to_json(l.subgroup_gens)}};
    if (!l.ok) level["violating_twist"] = to_json(l.violating_twist);
    levels.push_back(level);
  }
  return {{"m", to_json(r.m)}, {"minimal", r.minimal}, {"levels", levels}};
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  fail(ErrorKind::parse_error, "expected an integer, got " + j.dump());
}

multfield::MultElement mult_element_from_json(const json& j, const poly::BaseField& field) {
  Rational c(j.at("constant").get<std::string>());
  c.canonicalize();
  multfield::MultElement e(field, c);
  for (const auto& f : j.at("factors")) {
    auto base = multfield::parse_element(field, f.at("poly").get<std::string>());
    const auto& x = f.at("exp");
    epmod::EpScalar s(epmod::Characteristic(field.p()), Integer(x.at("num").get<std::string>()),
                      x.at("p_pow").get<unsigned>());
    e = e * multfield::pow_scalar(base, s);
  }
  return e;
}

compos::Scenario scenario_from_json(const json& j, bool allow_uncovered) {
  return compos::build_scenario(j.at("p").get<std::uint64_t>(), j.at("vars").get<std::vector<std::string>>(),
                                j.at("blocks").get<std::vector<std::vector<std::string>>>(), allow_uncovered);
}

}  // namespace mullat::cli
