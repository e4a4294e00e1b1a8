#include "cli.hpp"

#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "mullat/compos.hpp"
#include "mullat/descent.hpp"
#include "mullat/epmod.hpp"
#include "mullat/error.hpp"
#include "mullat/kummer.hpp"
#include "mullat/newton_puiseux.hpp"
#include "mullat/normal_form.hpp"

namespace mullat::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t p = 0;
  std::uint64_t seed = 1;
  std::string trunc;
  std::string prec;
  bool json = false;
  bool unsafe = false;
};

Rational parse_rational(const std::string& text, const char* what) {
  try {
    Rational q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(what) + " must be a rational number, got '" + text + "'");
  }
}

std::optional<Rational> optional_rational(const std::string& text, const char* what) {
  if (text.empty()) return std::nullopt;
  return parse_rational(text, what);
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

/// "identityN", "zeroN" or a JSON list of rows.
IntMatrix parse_matrix(const std::string& text, const char* what) {
  for (const std::string prefix : {"identity", "zero"}) {
    if (text.rfind(prefix, 0) == 0) {
      std::size_t n = std::stoul(text.substr(prefix.size()));
      return prefix == "identity" ? IntMatrix::identity(n) : IntMatrix(0, n);
    }
  }
  json j = parse_json(text, what);
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw UsageError(std::string(what) + " must be a non-empty list of rows (or identityN / zeroN)");
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : j) {
    std::vector<Integer> row;
    for (const auto& x : r) row.push_back(integer_from_json(x));
    if (row.size() != j[0].size()) throw UsageError(std::string(what) + " has rows of different lengths");
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows, rows[0].size());
}

std::vector<Integer> parse_vector(const std::string& text) {
  json j = parse_json(text, "--vector");
  if (!j.is_array()) throw UsageError("--vector must be a JSON list");
  std::vector<Integer> v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (cur.find_first_not_of(" \t") != std::string::npos) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<multfield::MultElement> parse_elements(const std::string& text, std::uint64_t p) {
  std::vector<multfield::MultElement> out;
  for (const auto& part : split_top_level(text, ','))
    out.push_back(multfield::parse_element(poly::BaseField(p), trim(part)));
  return out;
}

std::string list(const std::vector<Integer>& v) { return to_json(v).dump(); }

puiseux::CoeffField coeff_field(const Globals& g, const std::string& minpoly) {
  poly::BaseField base(g.p);
  if (minpoly.empty()) return puiseux::CoeffField(base);
  auto e = multfield::expand(multfield::parse_element(base, minpoly));
  auto vars = e.num.variables();
  if (!e.den.is_constant() || vars.size() != 1)
    throw UsageError("--minpoly must be a polynomial in one variable");
  auto m = e.num.to_upoly(vars[0]);
  return puiseux::CoeffField::extension(m, vars[0]);
}

compos::Scenario scenario(const Globals& g, const std::string& scenario_json, const std::string& blocks,
                          const std::string& vars) {
  if (!scenario_json.empty()) return scenario_from_json(parse_json(scenario_json, "--scenario"), g.unsafe);
  if (blocks.empty()) throw UsageError("give --blocks or --scenario");
  std::vector<std::vector<std::string>> bs;
  std::vector<std::string> order;
  for (const auto& b : split_top_level(blocks, ';')) {
    std::vector<std::string> block;
    for (const auto& v : split_top_level(b, ',')) {
      block.push_back(trim(v));
      if (std::find(order.begin(), order.end(), block.back()) == order.end()) order.push_back(block.back());
    }
    bs.push_back(std::move(block));
  }
  if (!vars.empty()) {
    order.clear();
    for (const auto& v : split_top_level(vars, ',')) order.push_back(trim(v));
  }
  return compos::build_scenario(g.p, order, bs, g.unsafe);
}

void emit(std::ostream& out, const Globals& g, const json& j, const std::string& text) {
  if (g.json)
    out << j.dump(2) << "\n";
  else
    out << text << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with multiplicative groups of function fields"};
  app.name("mullat");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--p", g.p, "Characteristic: 0 or a prime")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for sampled checks")->capture_default_str();
  app.add_option("--trunc", g.trunc, "Truncation order of series coefficients");
  app.add_option("--prec", g.prec, "Precision for Newton-Puiseux roots");
  app.add_flag("--json", g.json, "Print JSON");
  app.add_flag("--unsafe", g.unsafe, "Allow scenarios whose blocks do not cover the variables");

  std::function<void()> action;
  std::string matrix, lattice, ambient, vector, poly_text, elems, a_text, b_text, series, expr_text, minpoly;
  std::string blocks, vars, scenario_json, keep;
  std::string n_text = "1";
  std::uint64_t n_max = 12;

  auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf_cmd->add_option("--matrix", matrix, "JSON rows")->required();
  snf_cmd->callback([&] {
    action = [&] {
      auto r = snf(parse_matrix(matrix, "--matrix"));
      emit(out, g, {{"invariants", to_json(r.invariants)}, {"U", to_json(r.U)}, {"V", to_json(r.V)}},
           "invariants: " + list(r.invariants));
    };
  });

  auto* sat_cmd = app.add_subcommand("saturate", "Pure hull of a lattice inside an ambient lattice");
  sat_cmd->add_option("--lattice", lattice, "Generators of A (JSON rows, identityN, zeroN)")->required();
  sat_cmd->add_option("--ambient", ambient, "Generators of M (default: the full lattice)");
  sat_cmd->callback([&] {
    action = [&] {
      epmod::Characteristic ch(g.p);
      auto a = epmod::canonical_lattice(ch, parse_matrix(lattice, "--lattice"));
      auto m = ambient.empty() ? epmod::EpLattice::full(ch, a.ambient_dim())
                               : epmod::canonical_lattice(ch, parse_matrix(ambient, "--ambient"));
      auto hull = epmod::pure_hull(a, m);
      auto idx = epmod::saturation_index(a, m);
      emit(out, g,
           {{"hull", to_json(hull.basis())},
            {"index", to_json(idx.index)},
            {"invariant_factors", to_json(idx.invariant_factors)},
            {"exponent", to_json(idx.exponent)}},
           "hull: " + to_json(hull.basis()).dump() + "\nindex: " + mullat::to_string(idx.index) +
               "\ninvariant_factors: " + list(idx.invariant_factors) + "\nexponent: " +
               mullat::to_string(idx.exponent));
    };
  });

  auto* simple_cmd = app.add_subcommand("simple", "Whether span{v} is pure in M");
  simple_cmd->add_option("--vector", vector, "JSON list")->required();
  simple_cmd->add_option("--lattice", lattice, "Generators of M")->required();
  simple_cmd->callback([&] {
    action = [&] {
      epmod::Characteristic ch(g.p);
      auto v = parse_vector(vector);
      auto m = epmod::canonical_lattice(ch, parse_matrix(lattice, "--lattice"));
      auto s = epmod::is_simple(epmod::ExponentVector::from_integers(ch, v), m);
      json j{{"simple", s.simple}};
      std::string text = std::string("simple: ") + (s.simple ? "true" : "false");
      if (s.witness) {
        j["prime"] = to_json(s.witness->prime);
        j["root"] = epmod::to_string(s.witness->root);
        text += "\nprime: " + mullat::to_string(s.witness->prime) + "\nroot: " + epmod::to_string(s.witness->root);
      }
      emit(out, g, j, text);
    };
  });

  auto* factor_cmd = app.add_subcommand("factor", "Factor a polynomial, rational function or number");
  factor_cmd->add_option("--poly", poly_text, "Expression")->required();
  factor_cmd->callback([&] {
    action = [&] {
      auto e = multfield::parse_element(poly::BaseField(g.p), poly_text);
      json j = to_json(e);
      std::string text = "factored: " + multfield::to_string(e);
      if (e.is_constant() && g.p == 0) {
        auto pe = multfield::rationals_mod_torsion(e.constant());
        json primes = json::object();
        std::string ptext;
        for (std::size_t i = 0; i < pe.primes.size(); ++i) {
          primes[pe.primes[i].get_str()] = to_json(pe.exponents[i].num());
          ptext += (ptext.empty() ? "" : ", ") + pe.primes[i].get_str() + ": " + pe.exponents[i].num().get_str();
        }
        j["primes"] = primes;
        text += "\nprimes: {" + ptext + "}";
      }
      emit(out, g, j, text);
    };
  });

  auto* indep_cmd = app.add_subcommand("independent", "Independence modulo constants");
  indep_cmd->add_option("--elems", elems, "Comma-separated elements")->required();
  indep_cmd->callback([&] {
    action = [&] {
      bool ind = multfield::independent_mod_constants(parse_elements(elems, g.p));
      emit(out, g, {{"independent", ind}}, std::string("independent: ") + (ind ? "true" : "false"));
    };
  });

  auto* kummer_cmd = app.add_subcommand("kummer-degree", "Kummer group of a tuple at level n");
  kummer_cmd->add_option("--elems", elems, "Comma-separated elements")->required();
  kummer_cmd->add_option("--n", n_text, "Level")->required();
  kummer_cmd->callback([&] {
    action = [&] {
      auto kg = kummer::kummer_group(parse_elements(elems, g.p), Integer(n_text));
      emit(out, g, {{"level", to_json(kg.level)}, {"invariants", to_json(kg.invariants)}, {"order", to_json(kg.order())}},
           "invariants: " + list(kg.invariants) + "\norder: " + mullat::to_string(kg.order()));
    };
  });

  auto* det_cmd = app.add_subcommand("det-constant", "Finite-determination constant of (a, b)");
  det_cmd->add_option("--a", a_text, "Comma-separated elements (may be empty)");
  det_cmd->add_option("--b", b_text, "Comma-separated elements")->required();
  det_cmd->callback([&] {
    action = [&] {
      auto dc = kummer::determination_constant(parse_elements(a_text, g.p), parse_elements(b_text, g.p));
      emit(out, g, {{"m", to_json(dc.m)}, {"minimal", dc.minimal}, {"rank", dc.rank}},
           "m: " + mullat::to_string(dc.m) + "\nminimal: " + (dc.minimal ? "true" : "false"));
    };
  });

  auto* twist_cmd = app.add_subcommand("twist-check", "Check m (Z/n)^|b| inside the realizable twists for n <= n-max");
  twist_cmd->add_option("--a", a_text, "Comma-separated elements (may be empty)");
  twist_cmd->add_option("--b", b_text, "Comma-separated elements")->required();
  twist_cmd->add_option("--n-max", n_max, "Largest level")->capture_default_str();
  twist_cmd->callback([&] {
    action = [&] {
      auto r = kummer::check_finite_determination(parse_elements(a_text, g.p), parse_elements(b_text, g.p), n_max,
                                                  g.seed);
      std::ostringstream text;
      text << "m: " << r.m << "\nminimal: " << (r.minimal ? "true" : "false") << "\n";
      for (const auto& l : r.levels)
        text << "n=" << l.n << " " << (l.ok ? "ok" : "VIOLATION") << " gens " << to_json(l.subgroup_gens).dump()
             << "\n";
      text << "all levels pass: " << (r.all_ok() ? "true" : "false");
      emit(out, g, to_json(r), text.str());
    };
  });

  auto* eval_cmd = app.add_subcommand("puiseux-eval", "Evaluate a series expression in t");
  eval_cmd->add_option("--expr", expr_text, "Expression, O(t^(r)) terms allowed")->required();
  eval_cmd->add_option("--minpoly", minpoly, "Minimal polynomial of a coefficient generator, e.g. a^2-2");
  eval_cmd->callback([&] {
    action = [&] {
      auto k = coeff_field(g, minpoly);
      auto s = puiseux::parse_series(k, expr_text, optional_rational(g.trunc, "--trunc"));
      auto v = s.valuation();
      std::string vt = v ? mullat::to_string(*v) : "none";
      emit(out, g, {{"series", puiseux::to_string(s)}, {"valuation", vt}, {"ram", to_json(s.ram())}},
           "series: " + puiseux::to_string(s) + "\nvaluation: " + vt + "\nram: " + mullat::to_string(s.ram()));
    };
  });

  auto* roots_cmd = app.add_subcommand("puiseux-roots", "Newton-Puiseux roots of a polynomial in y");
  roots_cmd->add_option("--poly", poly_text, "Polynomial in y with coefficients in t")->required();
  roots_cmd->callback([&] {
    action = [&] {
      if (g.prec.empty()) throw UsageError("puiseux-roots needs --prec");
      Rational prec = parse_rational(g.prec, "--prec");
      auto f = puiseux::parse_series_poly(puiseux::CoeffField(poly::BaseField(g.p)), poly_text,
                                          optional_rational(g.trunc, "--trunc"));
      auto roots = puiseux::newton_puiseux(f, prec);
      json j = json::array();
      std::ostringstream text;
      for (const auto& r : roots) {
        const auto& k = r.series.field();
        bool ok = puiseux::vanishes_to(puiseux::residual(f, r), prec);
        json item{{"series", puiseux::to_string(r.series)},
                  {"multiplicity", r.multiplicity},
                  {"conjugates", r.conjugates},
                  {"residual_vanishes", ok}};
        text << "root: " << puiseux::to_string(r.series) << "\n  multiplicity " << r.multiplicity << ", conjugates "
             << r.conjugates;
        if (!k.is_prime()) {
          item["minpoly"] = poly::to_string(k.minpoly(), k.name());
          text << ", " << k.name() << " root of " << poly::to_string(k.minpoly(), k.name());
        }
        text << "\n  residual vanishes to t^(" << prec << "): " << (ok ? "true" : "false") << "\n";
        j.push_back(item);
      }
      std::string s = text.str();
      if (!s.empty()) s.pop_back();
      emit(out, g, {{"roots", j}}, s.empty() ? "no roots" : s);
    };
  });

  auto* residue_cmd = app.add_subcommand("residue", "Residue of a series in the valuation ring");
  residue_cmd->add_option("--series", series, "Series text")->required();
  residue_cmd->add_option("--minpoly", minpoly, "Minimal polynomial of a coefficient generator");
  residue_cmd->callback([&] {
    action = [&] {
      auto k = coeff_field(g, minpoly);
      auto r = puiseux::residue(puiseux::parse_series(k, series, optional_rational(g.trunc, "--trunc")));
      std::string v = k.in_prime_subfield(r.value) ? mullat::to_string(r.value.coeff(0)) : k.to_string(r.value);
      emit(out, g, {{"residue", v}, {"subfield", puiseux::to_string(r.subfield)}},
           "residue: " + v + "\nsubfield: " + puiseux::to_string(r.subfield));
    };
  });

  auto add_scenario_options = [&](CLI::App* cmd) {
    cmd->add_option("--blocks", blocks, "Blocks separated by ';', variables by ','");
    cmd->add_option("--vars", vars, "Variable order (default: order of appearance in the blocks)");
    cmd->add_option("--scenario", scenario_json, "Scenario JSON {p, vars, blocks}");
    cmd->add_option("--elems", elems, "Comma-separated elements")->required();
  };

  auto* probe_cmd = app.add_subcommand("scenario-probe", "Local-freeness probe of composite classes");
  add_scenario_options(probe_cmd);
  probe_cmd->callback([&] {
    action = [&] {
      auto s = scenario(g, scenario_json, blocks, vars);
      auto r = compos::locally_free_probe(s, parse_elements(elems, s.field.p()));
      json j = to_json(r);
      j["scenario"] = to_json(s);
      std::string text = compos::to_string(r);
      if (!s.covering) text = "warning: blocks do not cover the variables; no claim is made\n" + text;
      emit(out, g, j, text);
    };
  });

  auto* spec_cmd = app.add_subcommand("specialize", "Evaluate the variables outside --keep at a defined point");
  add_scenario_options(spec_cmd);
  spec_cmd->add_option("--keep", keep, "Comma-separated variables to keep")->required();
  spec_cmd->callback([&] {
    action = [&] {
      auto s = scenario(g, scenario_json, blocks, vars);
      std::vector<std::string> kv;
      for (const auto& v : split_top_level(keep, ',')) kv.push_back(trim(v));
      auto r = compos::specialize(s, kv, parse_elements(elems, s.field.p()));
      json assignment = json::object(), images = json::array();
      std::string text = "assignment:";
      for (const auto& [v, x] : r.assignment) {
        assignment[v] = mullat::to_string(x);
        text += " " + v + "=" + mullat::to_string(x);
      }
      for (const auto& e : r.elements) {
        images.push_back(multfield::to_string(e));
        text += "\n" + multfield::to_string(e);
      }
      emit(out, g, {{"assignment", assignment}, {"elements", images}}, text);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mullat::cli
