#include <benchmark/benchmark.h>

#include "gl3gl2/arith.hpp"
#include "gl3gl2/gl3.hpp"
#include "gl3gl2/specfun.hpp"
#include "gl3gl2/voronoi.hpp"

using namespace gl3gl2;

static void BM_KloostermanDirect(benchmark::State& state) {
  const auto c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(arith::kloosterman(3, 7, c));
}
BENCHMARK(BM_KloostermanDirect)->Arg(97)->Arg(1009)->Arg(10007);

static void BM_KloostermanCrt(benchmark::State& state) {
  const auto c = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(arith::kloosterman_crt(3, 7, c));
}
BENCHMARK(BM_KloostermanCrt)->Arg(1000)->Arg(9240)->Arg(10007);

static void BM_KloostermanTable(benchmark::State& state) {
  const arith::KloostermanTable t(state.range(0));
  for (auto _ : state) {
    double s = 0.0;
    for (int n = 1; n <= 20; ++n)
      for (int m = 1; m <= 20; ++m) s += t(n, m);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_KloostermanTable)->Arg(500);

static void BM_BesselJ(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_j(order, x));
    x = x < 80.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJ)->Arg(1)->Arg(11)->Arg(15);

static void BM_LogGamma(benchmark::State& state) {
  cplx z(0.9, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::log_gamma(z));
    z += cplx(0.0, 0.7);
    if (z.imag() > 2000.0) z = cplx(0.9, 1.0);
  }
}
BENCHMARK(BM_LogGamma);

static void BM_TernaryDivisorSieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(arith::ternary_divisor_table(state.range(0)).data());
}
BENCHMARK(BM_TernaryDivisorSieve)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_PsiDirect(benchmark::State& state) {
  static const specfun::BumpFunction psi;
  static const voronoi::PsiTransform t(psi, cplx(1.0 / 3.0), 0.9, 0.1, false);
  for (auto _ : state) benchmark::DoNotOptimize(t.direct(3.0));
}
BENCHMARK(BM_PsiDirect)->Unit(benchmark::kMillisecond);

static void BM_VoronoiLhs(benchmark::State& state) {
  static const specfun::BumpFunction psi;
  static const auto table = gl3::eisenstein_coeffs(4, 100);
  voronoi::VoronoiParams p;
  p.d = 3;
  p.N = 30.0;
  p.psi = &psi;
  p.table = &table;
  for (auto _ : state) benchmark::DoNotOptimize(voronoi::voronoi_lhs(p));
}
BENCHMARK(BM_VoronoiLhs);

BENCHMARK_MAIN();
