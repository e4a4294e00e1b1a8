#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "mullat/compos.hpp"
#include "mullat/descent.hpp"
#include "mullat/error.hpp"

using namespace mullat;
using namespace mullat::compos;

namespace {

MultElement el(const std::string& s, std::uint64_t p = 0) { return multfield::parse_element(BaseField(p), s); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::invalid_argument;
}

Scenario xy() { return build_scenario(0, {"x", "y"}, {{"x"}, {"y"}}); }

}  // namespace

TEST(Scenario, Validation) {
  EXPECT_EQ(xy().blocks.size(), 2u);
  EXPECT_EQ(kind_of([] { build_scenario(0, {"x", "y", "z"}, {{"x"}, {"y"}}); }), ErrorKind::uncovered_variable);
  EXPECT_EQ(build_scenario(0, {"x", "y", "z"}, {{"x", "y"}, {"y", "z"}}).blocks.size(), 2u);
  EXPECT_EQ(kind_of([] { build_scenario(0, {"x"}, {}); }), ErrorKind::empty_blocks);
  EXPECT_EQ(kind_of([] { build_scenario(0, {"x"}, {{"x"}, {"w"}}); }), ErrorKind::foreign_variable);
  auto loose = build_scenario(0, {"x", "y", "z"}, {{"x"}, {"y"}}, true);
  EXPECT_FALSE(loose.covering);
}

TEST(CompositeClass, Examples) {
  auto s = xy();
  EXPECT_EQ(to_string(class_of(el("x+y"), s)), "{x+y -> 1}");
  EXPECT_TRUE(class_of(el("x^2*(x+1)"), s).is_zero());
  EXPECT_EQ(to_string(class_of(el("x*(x+y)^2"), s)), "{x+y -> 2}");
  EXPECT_EQ(kind_of([&] { class_of(el("x+z"), s); }), ErrorKind::foreign_variable);
  EXPECT_TRUE(class_of(el("7*x*y^3/(y+1)"), s).is_zero());
}

TEST(CompositeClass, IsAHomomorphismKillingSingleBlockElements) {
  auto s = build_scenario(0, {"x", "y", "z"}, {{"x", "y"}, {"z"}});
  std::vector<std::string> pool{"x+z", "x*y+z", "y+z+1", "x+y", "z+2", "x", "7"};
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto pick = [&] {
      MultElement e(BaseField(), 1);
      for (int j = 0; j < 3; ++j) {
        auto f = el(pool[rng() % pool.size()]);
        e = (rng() % 2) ? e * f : e / f;
      }
      return e;
    };
    auto a = pick(), b = pick();
    EXPECT_EQ(class_of(a * b, s), class_of(a, s) + class_of(b, s));
  }
  // With a single block every class is zero.
  auto one = build_scenario(0, {"x", "y"}, {{"x", "y"}});
  EXPECT_TRUE(class_of(el("(x+y)*(x*y+1)"), one).is_zero());
}

TEST(Specialize, Examples) {
  auto s = xy();
  auto r = specialize(s, {"x"}, std::vector{el("x+y")});
  EXPECT_EQ(r.assignment.at("y"), 0);
  EXPECT_EQ(r.elements[0], el("x"));
  r = specialize(s, {"x"}, std::vector{el("x-y")});
  EXPECT_EQ(r.elements[0], el("x"));
  r = specialize(s, {"x"}, std::vector{el("y")});
  EXPECT_EQ(r.assignment.at("y"), 1);
  EXPECT_EQ(r.elements[0], el("1"));
}

TEST(Specialize, ComposesWithDescent) {
  auto s = build_scenario(0, {"l", "x"}, {{"l"}, {"x"}});
  std::vector<std::string> alphas{"x*(x+l)", "(x-1)/(x*l+1)", "(x+2*l)^2*x^-1"};
  std::vector<std::string> lambdas{"l^2", "(l+1)/l", "3"};
  for (const auto& a : alphas) {
    for (const auto& lam : lambdas) {
      for (unsigned m = 1; m <= 4; ++m) {
        auto alpha = el(a), lambda = el(lam);
        auto b = lambda * multfield::pow_scalar(alpha, Rational(m));
        auto sp = specialize(s, {"l"}, std::vector{b, alpha});
        auto rep = puiseux::descend_root(b, alpha, lambda, m, sp.assignment);
        EXPECT_TRUE(rep.verified) << a << " " << lam << " " << m;
        EXPECT_EQ(rep.pi_b, sp.elements[0]);
      }
    }
  }
}

TEST(Probe, WorkedExample) {
  auto r = locally_free_probe(xy(), std::vector{el("x+y"), el("x+2*y"), el("x*y+1")});
  EXPECT_EQ(r.rank, 3u);
  EXPECT_TRUE(r.free);
  EXPECT_EQ(r.m, 1);
  for (const auto& e : r.elements) EXPECT_TRUE(e.simple);
}

TEST(Probe, SquareNeedsSaturation) {
  auto r = locally_free_probe(xy(), std::vector{el("(x+y)^2")});
  ASSERT_EQ(r.hull_basis.size(), 1u);
  EXPECT_EQ(r.hull_basis[0], el("x+y"));
  EXPECT_EQ(r.invariant_factors, std::vector<Integer>{2});
  EXPECT_EQ(r.m, 2);
  EXPECT_FALSE(r.elements[0].simple);

  auto pair = locally_free_probe(xy(), std::vector{el("x+y"), el("(x+y)^2")});
  EXPECT_EQ(pair.rank, 1u);
  EXPECT_EQ(pair.m, 1);
  EXPECT_EQ(pair.elements[0].index, 1);
  EXPECT_EQ(pair.elements[1].index, 2);
}

TEST(Probe, SingleBlockElementsGiveTheZeroModule) {
  auto r = locally_free_probe(xy(), std::vector{el("x^2+1"), el("y"), el("5")});
  EXPECT_EQ(r.rank, 0u);
  EXPECT_TRUE(r.free);
  EXPECT_EQ(r.m, 1);
}

TEST(Probe, CharacteristicTwoStripsTwo) {
  auto s = build_scenario(2, {"x", "y"}, {{"x"}, {"y"}});
  auto r = locally_free_probe(s, std::vector{el("(x+y)^6", 2)});
  EXPECT_EQ(r.m, 3);
  EXPECT_TRUE(r.free);
}
