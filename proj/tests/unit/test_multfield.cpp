#include <gtest/gtest.h>

#include <random>

#include "mullat/error.hpp"
#include "mullat/multfield.hpp"
#include "mullat/ufactor.hpp"

using namespace mullat;
using namespace mullat::multfield;

namespace {

const BaseField Q;

MultElement el(const std::string& s, std::uint64_t p = 0) { return parse_element(BaseField(p), s); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::invalid_argument;
}

std::vector<std::vector<Rational>> matrix_of(const ExponentMatrix& m) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : m.rows) out.push_back(r.to_rationals());
  return out;
}

}  // namespace

TEST(MPoly, GrlexOrderAndPrinting) {
  auto f = expand(el("x^2*y + y^3 - 2*x + 7")).num;
  EXPECT_EQ(poly::to_string(f), "x^2*y+y^3-2*x+7");
  EXPECT_EQ(poly::to_string(expand(el("y+x")).num), "x+y");
  EXPECT_EQ(f.degree(), 3u);
  EXPECT_EQ(f.degree_in("x"), 2u);
}

TEST(MPoly, SubstituteAndEvaluate) {
  auto f = expand(el("x^2 + x*y")).num;
  auto g = f.substitute("y", expand(el("x + 1")).num);
  EXPECT_EQ(poly::to_string(g), "2*x^2+x");
  EXPECT_EQ(f.evaluate({{"x", Rational(2)}, {"y", Rational(3)}}).constant_term(), 10);
}

TEST(Expr, ParsesGrammar) {
  auto n = expr::parse("t^2*(t+1)^-3");
  EXPECT_EQ(n.kind, expr::Node::Kind::mul);
  EXPECT_EQ(expr::variables(expr::parse("x1*y + z")), (std::set<std::string>{"x1", "y", "z"}));
  EXPECT_EQ(expr::parse("t^(-1/2)").exponent, Rational(-1, 2));
  EXPECT_EQ(kind_of([] { expr::parse("t^"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([] { expr::parse("xy+"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([] { expr::parse("(t+1"); }), ErrorKind::parse_error);
  EXPECT_EQ(kind_of([] { expr::parse("T"); }), ErrorKind::parse_error);
}

TEST(Factor, SpecExamples) {
  auto twelve = factor(Rational(12), Q);
  EXPECT_EQ(twelve.constant(), 12);
  auto pe = rationals_mod_torsion(12);
  EXPECT_EQ(pe.primes, (std::vector<Integer>{2, 3}));
  EXPECT_EQ(pe.exponents.to_rationals(), (std::vector<Rational>{2, 1}));

  auto sq = el("t^2+2*t+1");
  ASSERT_EQ(sq.factors().size(), 1u);
  EXPECT_EQ(to_string(sq), "(t+1)^2");

  auto f2 = el("t^4+1", 2);
  EXPECT_EQ(to_string(f2), "(t+1)^4");
  EXPECT_EQ(poly::to_string(expand(f2).num), "t^4+1");
  EXPECT_EQ(kind_of([] { el("t-t"); }), ErrorKind::zero_input);
  EXPECT_EQ(kind_of([] { el("0"); }), ErrorKind::zero_input);
}

TEST(Factor, ContentAndUnits) {
  auto e = el("6*x^2*y + 4*x*y^2");
  EXPECT_EQ(e.constant(), 2);
  EXPECT_EQ(to_string(e), "2*x*(3*x+2*y)*y");
  auto neg = el("-t^2 + 1");
  EXPECT_EQ(neg.constant(), -1);
  EXPECT_EQ(to_string(neg), "-(t-1)*(t+1)");
  auto half = el("t/2 + 1/2");
  EXPECT_EQ(to_string(half), "1/2*(t+1)");
}

TEST(Factor, ClaimedIrreducibleChecks) {
  EXPECT_EQ(to_string(el("x+y")), "(x+y)");
  EXPECT_NO_THROW(el("x*y+1"));
  EXPECT_NO_THROW(el("x^2+y^2+1"));
  EXPECT_EQ(kind_of([] { el("x^2-y^2"); }), ErrorKind::reducible);
  EXPECT_EQ(kind_of([] { el("x*y+x+y+1"); }), ErrorKind::reducible);
  EXPECT_EQ(kind_of([] { el("x^2+2*x*y+y^2-1"); }), ErrorKind::reducible);
  EXPECT_EQ(kind_of([] { el("x^2+y^2", 2); }), ErrorKind::reducible);
  // x^2 + y^2 is irreducible over Q but splits over F_5 as (x+2y)(x-2y).
  EXPECT_NO_THROW(el("x^2+y^2"));
  EXPECT_EQ(kind_of([] { el("x^2+y^2", 5); }), ErrorKind::reducible);
  // Factored input assembles without a check on the product.
  EXPECT_EQ(el("(x+y)*(x-y)").factors().size(), 2u);
}

TEST(Factor, RoundTripUnivariate) {
  std::mt19937_64 rng(13);
  for (std::uint64_t p : {0, 2, 3, 5, 7, 11, 13}) {
    BaseField k(p);
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t deg = 1 + rng() % 12;
      std::vector<Rational> c(deg + 1);
      for (auto& x : c) x = static_cast<long>(rng() % 9) - 4;
      if (k.element(c[deg]) == 0) c[deg] = 1;
      poly::UPoly f(k, c);
      auto e = factor(MPoly::from_upoly(f, "t"));
      auto back = expand(e);
      EXPECT_TRUE(back.den.is_constant());
      EXPECT_EQ(back.num.scaled(k.inv(back.den.constant_term())), MPoly::from_upoly(f, "t")) << poly::to_string(f);
    }
  }
}

TEST(Factor, PrintParseRoundTrip) {
  for (const char* s : {"2*t^2*(t+1)^-3", "-1/3*(x+y)*(x*y+1)^2", "t^(1/2)*(t+1)^(-3/4)"}) {
    std::uint64_t p = std::string(s).find("^(") == std::string::npos ? 0 : 2;
    auto e = el(s, p);
    EXPECT_EQ(el(to_string(e), p), e) << s;
  }
}

TEST(Combine, Examples) {
  EXPECT_EQ(combine(el("t"), el("t"), CombineOp::multiply), el("t^2"));
  EXPECT_EQ(combine(el("t*(t+1)"), el("t"), CombineOp::divide), el("t+1"));
  auto c = combine(el("2*t"), el("3/t"), CombineOp::multiply);
  EXPECT_TRUE(c.is_constant());
  EXPECT_EQ(c.constant(), 6);
  EXPECT_THROW(combine(el("t"), el("t", 2), CombineOp::multiply), Error);
}

TEST(PowScalar, Examples) {
  auto r = pow_scalar(el("t", 2), Rational(1, 2));
  EXPECT_EQ(r.factors().begin()->second.to_rational(), Rational(1, 2));
  EXPECT_EQ(pow_scalar(el("t"), Rational(3)), el("t^3"));
  EXPECT_EQ(kind_of([] { pow_scalar(el("t"), Rational(1, 2)); }), ErrorKind::not_in_ep);
  EXPECT_EQ(kind_of([] { el("t^(1/2)"); }), ErrorKind::not_in_ep);
}

TEST(PowScalar, RoundTrip) {
  std::mt19937_64 rng(31);
  for (std::uint64_t p : {2, 3, 5}) {
    Characteristic ch(p);
    auto a = el("t^2*(t+1)^-1*(x+t)", p);
    for (int trial = 0; trial < 10; ++trial) {
      Integer num = 1 + static_cast<long>(rng() % 5);
      EpScalar q(ch, num * ((rng() & 1) ? 1 : -1), static_cast<unsigned>(rng() % 3));
      // 1/q is in E_p only when the numerator is a power of p.
      Rational qi = 1 / q.to_rational();
      if (Integer(strip_prime(qi.get_den(), p)) != 1) continue;
      EXPECT_EQ(pow_scalar(pow_scalar(a, q), qi), a);
    }
  }
}

TEST(ExponentMatrix, Examples) {
  std::vector a{el("t"), el("t+1")};
  auto m = exponent_matrix(a);
  ASSERT_EQ(m.index.size(), 2u);
  EXPECT_EQ(to_string(m.index[0]), "t");
  EXPECT_EQ(to_string(m.index[1]), "t+1");
  EXPECT_EQ(matrix_of(m), (std::vector<std::vector<Rational>>{{1, 0}, {0, 1}}));

  std::vector b{el("t^2*(t+1)"), el("t*(t+1)")};
  EXPECT_EQ(matrix_of(exponent_matrix(b)), (std::vector<std::vector<Rational>>{{2, 1}, {1, 1}}));

  std::vector c{el("4/9"), el("8/27")};
  auto t = exponent_matrix(c, Quotient::torsion);
  ASSERT_EQ(t.index.size(), 2u);
  EXPECT_EQ(to_string(t.index[0]), "2");
  EXPECT_EQ(matrix_of(t), (std::vector<std::vector<Rational>>{{2, -2}, {3, -3}}));
  EXPECT_TRUE(exponent_matrix(c).index.empty());
}

TEST(Independence, Examples) {
  std::vector a{el("t"), el("t+1")};
  EXPECT_TRUE(independent_mod_constants(a));
  std::vector b{el("t^2"), el("t^3")};
  EXPECT_FALSE(independent_mod_constants(b));
  std::vector c{el("4/9"), el("8/27")};
  EXPECT_FALSE(independent_mod_constants(c));
}

TEST(Independence, InvariantUnderConstants) {
  std::vector a{el("t*(t+1)^2"), el("(t-1)*(x+t)"), el("t^2*(t+1)^4")};
  std::vector b{el("5*t*(t+1)^2"), el("-2/7*(t-1)*(x+t)"), el("3*t^2*(t+1)^4")};
  EXPECT_EQ(independent_mod_constants(a), independent_mod_constants(b));
  a.pop_back();
  b.pop_back();
  EXPECT_EQ(independent_mod_constants(a), independent_mod_constants(b));
}

TEST(Independence, DistinctIrreduciblesAreFree) {
  std::vector a{el("t"), el("t+1"), el("t^2+1"), el("x+t"), el("x*t+1"), el("t+2")};
  EXPECT_TRUE(independent_mod_constants(a));
}

TEST(PureHullBasis, Examples) {
  std::vector a{el("t^2")};
  auto h = pure_hull_basis_mod_constants(a);
  ASSERT_EQ(h.basis.size(), 1u);
  EXPECT_EQ(h.basis[0], el("t"));
  EXPECT_EQ(h.E[0][0].to_rational(), 2);
  EXPECT_EQ(h.m, 2);

  std::vector b{el("t^2*(t+1)"), el("t*(t+1)")};
  EXPECT_EQ(pure_hull_basis_mod_constants(b).m, 1);

  std::vector c{el("t^2", 2)};
  auto hc = pure_hull_basis_mod_constants(c);
  EXPECT_EQ(hc.basis[0], el("t", 2));
  EXPECT_EQ(hc.m, 1);

  std::vector d{el("t^2"), el("t^3")};
  EXPECT_EQ(kind_of([&] { pure_hull_basis_mod_constants(d); }), ErrorKind::dependent);
}

TEST(PureHullBasis, MinimalExponent) {
  std::vector a{el("t^2*(t+1)^4"), el("(t+1)^6*(t-1)^3")};
  auto h = pure_hull_basis_mod_constants(a);
  ASSERT_EQ(h.basis.size(), 2u);
  EXPECT_TRUE(epmod::is_sublattice(h.span, h.hull));
  auto kills_hull = [&](const Integer& d) {
    for (const auto& b : h.hull.basis_vectors())
      if (!epmod::contains(h.span, EpScalar(h.context.characteristic, d) * b)) return false;
    return true;
  };
  EXPECT_TRUE(kills_hull(h.m));
  for (const auto& d : divisors(h.m))
    if (d != h.m) EXPECT_FALSE(kills_hull(d)) << d;
  // E reproduces the input rows from the hull basis.
  for (std::size_t i = 0; i < a.size(); ++i) {
    MultElement back(Q);
    for (std::size_t j = 0; j < h.basis.size(); ++j) back = back * pow_scalar(h.basis[j], h.E[i][j]);
    EXPECT_EQ(back, a[i]);
  }
}

TEST(Torsion, RationalsModSigns) {
  auto a = rationals_mod_torsion(Rational(-4, 9));
  EXPECT_EQ(a.primes, (std::vector<Integer>{2, 3}));
  EXPECT_EQ(a.exponents.to_rationals(), (std::vector<Rational>{2, -2}));
  EXPECT_TRUE(rationals_mod_torsion(1).exponents.entries().empty());
  EXPECT_TRUE(rationals_mod_torsion(-1).exponents.entries().empty());
  EXPECT_EQ(kind_of([] { rationals_mod_torsion(0); }), ErrorKind::zero_input);
}

TEST(Torsion, SaturationOfTwoThirds) {
  std::vector c{el("4/9"), el("8/27")};
  auto s = saturate_span(c, Quotient::torsion);
  ASSERT_EQ(s.hull_basis.size(), 1u);
  EXPECT_EQ(s.hull_basis[0].constant(), Rational(2, 3));
  EXPECT_EQ(s.index, 1);
}
