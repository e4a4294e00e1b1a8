#include "mullat/compos.hpp"

#include <algorithm>
#include <set>

#include "mullat/error.hpp"

namespace mullat::compos {

namespace {

void require_known_variables(const Scenario& s, const std::vector<std::string>& vars) {
  for (const auto& v : vars)
    if (std::find(s.variables.begin(), s.variables.end(), v) == s.variables.end())
      fail(ErrorKind::foreign_variable, "variable " + v + " is not in the scenario");
}

void require_scenario_field(const Scenario& s, const MultElement& e) {
  if (!(e.field() == s.field))
    fail(ErrorKind::characteristic_mismatch, "element over " + e.field().describe() + " in a scenario over " +
                                                 s.field.describe());
  require_known_variables(s, e.variables());
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : sep) + x;
  return out;
}

}  // namespace

Scenario build_scenario(std::uint64_t p, std::vector<std::string> variables,
                        std::vector<std::vector<std::string>> blocks, bool allow_uncovered) {
  if (blocks.empty()) fail(ErrorKind::empty_blocks, "a scenario needs at least one block");
  std::set<std::string> seen;
  for (const auto& v : variables)
    if (!seen.insert(v).second) fail(ErrorKind::invalid_argument, "variable " + v + " listed twice");
  Scenario s{BaseField(p), std::move(variables), std::move(blocks), true};
  std::set<std::string> covered;
  for (const auto& b : s.blocks) {
    if (b.empty()) fail(ErrorKind::empty_blocks, "empty block");
    require_known_variables(s, b);
    covered.insert(b.begin(), b.end());
  }
  for (const auto& v : s.variables) {
    if (covered.contains(v)) continue;
    if (!allow_uncovered) fail(ErrorKind::uncovered_variable, "variable " + v + " is in no block");
    s.covering = false;
  }
  return s;
}

bool single_block(const Scenario& s, const Irreducible& f) {
  const auto vars = f.variables();
  return std::any_of(s.blocks.begin(), s.blocks.end(), [&](const auto& block) {
    return std::all_of(vars.begin(), vars.end(),
                       [&](const auto& v) { return std::find(block.begin(), block.end(), v) != block.end(); });
  });
}

CompositeClass operator+(const CompositeClass& a, const CompositeClass& b) {
  CompositeClass c = a;
  for (const auto& [f, x] : b.residual_factors) {
    auto [it, inserted] = c.residual_factors.emplace(f, x);
    if (inserted) continue;
    it->second = it->second + x;
    if (it->second.is_zero()) c.residual_factors.erase(it);
  }
  return c;
}

CompositeClass class_of(const MultElement& e, const Scenario& s) {
  require_scenario_field(s, e);
  CompositeClass c;
  for (const auto& [f, x] : e.factors())
    if (!single_block(s, f)) c.residual_factors.emplace(f, x);
  return c;
}

MultElement representative(const CompositeClass& c, const BaseField& field) {
  MultElement out(field);
  for (const auto& [f, x] : c.residual_factors) out = out * MultElement::power(f, x);
  return out;
}

std::string to_string(const CompositeClass& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [f, x] : c.residual_factors)
    out += (out.empty() ? "" : ", ") + to_string(f) + " -> " + to_string(x);
  return "{" + out + "}";
}

Specialization specialize(const Scenario& s, const std::vector<std::string>& keep, std::span<const MultElement> elems) {
  require_known_variables(s, keep);
  for (const auto& e : elems) require_scenario_field(s, e);
  std::vector<std::string> kill;
  for (const auto& v : s.variables)
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) kill.push_back(v);
  Specialization out;
  out.assignment = multfield::find_place(elems, kill);
  for (const auto& e : elems) out.elements.push_back(multfield::apply_place(e, out.assignment));
  return out;
}

ProbeReport locally_free_probe(const Scenario& s, std::span<const MultElement> elems) {
  ProbeReport r;
  std::vector<MultElement> reps;
  for (const auto& e : elems) {
    r.classes.push_back(class_of(e, s));
    reps.push_back(representative(r.classes.back(), s.field));
  }
  auto sat = multfield::saturate_span(reps);
  r.context = sat.context;
  r.rank = sat.hull.rank();
  r.hull_basis = sat.hull_basis;
  r.invariant_factors = sat.invariant_factors;
  r.index = sat.index;
  for (const auto& d : r.invariant_factors) mpz_lcm(r.m.get_mpz_t(), r.m.get_mpz_t(), d.get_mpz_t());

  const auto ch = r.context.characteristic;
  const std::size_t k = r.context.index.size();
  const auto full = epmod::EpLattice::full(ch, k);
  // Certificate: the hull is pure in the free ambient module and its basis is independent.
  r.free = epmod::is_pure(sat.hull, full) &&
           epmod::canonical_lattice(ch, k, sat.hull.basis_vectors()).rank() == sat.hull.basis().rows();
  for (const auto& row : r.context.rows) {
    ElementProbe probe;
    if (row.is_zero()) {
      probe.simple = false;
    } else {
      probe.simple = epmod::is_simple(row, full).simple;
      probe.index = epmod::saturation_index(epmod::canonical_lattice(ch, k, std::span(&row, 1)), full).index;
    }
    r.elements.push_back(probe);
  }
  return r;
}

std::string to_string(const ProbeReport& r) {
  std::vector<std::string> basis, factors, simple;
  for (const auto& b : r.hull_basis) basis.push_back(to_string(b));
  for (const auto& d : r.invariant_factors) factors.push_back(to_string(d));
  for (std::size_t i = 0; i < r.elements.size(); ++i)
    simple.push_back(std::string(r.elements[i].simple ? "true" : "false") + " (index " +
                     to_string(r.elements[i].index) + ")");
  return "model: classes modulo constants and single-block factors\n"
         "rank: " + std::to_string(r.rank) + "\nhull_basis: [" + join(basis, ", ") + "]\ninvariant_factors: [" +
         join(factors, ", ") + "]\nindex: " + to_string(r.index) + "\nm: " + to_string(r.m) +
         "\nfree: " + (r.free ? "true" : "false") + "\nsimple: [" + join(simple, ", ") + "]";
}

}  // namespace mullat::compos
