#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mullat/compos.hpp"
#include "mullat/epmod.hpp"
#include "mullat/kummer.hpp"
#include "mullat/multfield.hpp"
#include "mullat/newton_puiseux.hpp"
#include "mullat/normal_form.hpp"

using namespace mullat;

namespace {

std::vector<IntMatrix> random_matrices(std::size_t dim, long bound, int count) {
  std::mt19937_64 rng(dim * 1000 + static_cast<std::uint64_t>(bound));
  std::uniform_int_distribution<long> entry(-bound, bound);
  std::vector<IntMatrix> out;
  for (int i = 0; i < count; ++i) {
    IntMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) m(r, c) = entry(rng);
    out.push_back(m);
  }
  return out;
}

void BM_Snf(benchmark::State& state) {
  auto ms = random_matrices(static_cast<std::size_t>(state.range(0)), 9, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(snf(ms[i++ % ms.size()]));
}
BENCHMARK(BM_Snf)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Hnf(benchmark::State& state) {
  auto ms = random_matrices(static_cast<std::size_t>(state.range(0)), 9, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hnf(ms[i++ % ms.size()]));
}
BENCHMARK(BM_Hnf)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_PureHull(benchmark::State& state) {
  const epmod::Characteristic q(0);
  auto ms = random_matrices(static_cast<std::size_t>(state.range(0)), 5, 64);
  std::vector<epmod::EpLattice> lattices;
  for (auto& m : ms) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(0, c) *= 6;
    lattices.push_back(epmod::canonical_lattice(q, m));
  }
  const auto full = epmod::EpLattice::full(q, static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(epmod::pure_hull(lattices[i++ % lattices.size()], full));
}
BENCHMARK(BM_PureHull)->Arg(3)->Arg(6)->Arg(10);

void BM_FactorBivariate(benchmark::State& state) {
  const poly::BaseField k(static_cast<std::uint64_t>(state.range(0)));
  const auto f = multfield::parse_element(k, "(x+y+1)*(x^2+y^3+2)*(x*y+3)");
  const auto expanded = multfield::expand(f);
  for (auto _ : state) benchmark::DoNotOptimize(multfield::factor(expanded.num));
}
BENCHMARK(BM_FactorBivariate)->Arg(0)->Arg(5)->Arg(101);

void BM_KummerGroup(benchmark::State& state) {
  const poly::BaseField k;
  std::vector<multfield::MultElement> a{multfield::parse_element(k, "x^2*(x+1)^3"),
                                        multfield::parse_element(k, "(x+1)*(x-1)^4"),
                                        multfield::parse_element(k, "x*(x-1)^6")};
  for (auto _ : state) benchmark::DoNotOptimize(kummer::kummer_group(a, Integer(state.range(0))));
}
BENCHMARK(BM_KummerGroup)->Arg(12)->Arg(360)->Arg(100000);

void BM_NewtonPuiseux(benchmark::State& state) {
  const puiseux::CoeffField q;
  const Rational prec = state.range(0);
  const auto f = puiseux::parse_series_poly(q, "y^3 - (1+t)*y^2 - t*y + t^2 + t^5", prec);
  for (auto _ : state) benchmark::DoNotOptimize(puiseux::newton_puiseux(f, prec));
}
BENCHMARK(BM_NewtonPuiseux)->Arg(4)->Arg(8)->Arg(16);

void BM_CompositeProbe(benchmark::State& state) {
  auto s = compos::build_scenario(0, {"x", "y", "z"}, {{"x"}, {"y"}, {"z"}});
  const poly::BaseField k;
  std::vector<multfield::MultElement> elems{multfield::parse_element(k, "(x+y)*(y+z)"),
                                            multfield::parse_element(k, "(x+2*y)^2*(x*z+1)"),
                                            multfield::parse_element(k, "(x*y+1)*(y+z)^3")};
  for (auto _ : state) benchmark::DoNotOptimize(compos::locally_free_probe(s, elems));
}
BENCHMARK(BM_CompositeProbe);

}  // namespace

BENCHMARK_MAIN();
