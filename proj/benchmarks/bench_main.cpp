#include "sqrlat/gausscomb.hpp"
#include "sqrlat/grouplab.hpp"
#include "sqrlat/hecke.hpp"
#include "sqrlat/hilbert.hpp"
#include "sqrlat/idlat.hpp"
#include "sqrlat/theta.hpp"

#include <benchmark/benchmark.h>

using namespace sqrlat;

namespace {

void BM_QuadraticField(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_quadratic_field(state.range(0)));
}
BENCHMARK(BM_QuadraticField)->Arg(8)->Arg(257);

void BM_SqrtPoints(benchmark::State& state) {
  auto dual = inverse_different(make_quadratic_field(17));
  for (auto _ : state) benchmark::DoNotOptimize(sqrt_points(dual, state.range(0)).size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SqrtPoints)->RangeMultiplier(2)->Range(25, 200)->Complexity();

void BM_ThetaEvaluation(benchmark::State& state) {
  auto K = make_quadratic_field(8);
  ThetaContext ctx(invert(K->generator()), FractionalIdeal::unit(K));
  auto z = random_point(ctx.delta(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(ctx.theta(z));
}
BENCHMARK(BM_ThetaEvaluation);

void BM_SphereConstruction(benchmark::State& state) {
  auto K = make_quadratic_field(17);
  for (auto _ : state) benchmark::DoNotOptimize(construct_thm1(K, {1, 1}, 1, std::nullopt, 1, state.range(0)));
}
BENCHMARK(BM_SphereConstruction)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_FreeProductProbe(benchmark::State& state) {
  Lattice L = Lattice::numeric({{3}});
  ProbeBox box = coordinate_box({L, L}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(free_product_probe(box, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FreeProductProbe)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_WordEnumeration(benchmark::State& state) {
  WordEnumConfig cfg{static_cast<int>(state.range(0)), 3, 2.5};
  for (auto _ : state) {
    std::size_t n = 0;
    enumerate_words(cfg, [&](const HeckeWord&, const Mat2&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_WordEnumeration)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

const HeckeSeries& shared_series() {
  static const HeckeSeries s([] {
    SeriesConfig c;
    c.prune = 1e4;
    return c;
  }());
  return s;
}

void BM_SeriesEvaluation(benchmark::State& state) {
  const auto& s = shared_series();
  for (auto _ : state) benchmark::DoNotOptimize(s.eval(Complex(0.3, 1.2), 1.1));
}
BENCHMARK(BM_SeriesEvaluation)->Unit(benchmark::kMicrosecond);

void BM_CoefficientsQuadrature(benchmark::State& state) {
  const auto& s = shared_series();
  for (auto _ : state) benchmark::DoNotOptimize(coefficients(s, 1, state.range(0), 1.3));
}
BENCHMARK(BM_CoefficientsQuadrature)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_CoefficientsClosedForm(benchmark::State& state) {
  const auto& s = shared_series();
  for (auto _ : state) benchmark::DoNotOptimize(orbit_coefficients(s, 1, state.range(0), 1.3));
}
BENCHMARK(BM_CoefficientsClosedForm)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
