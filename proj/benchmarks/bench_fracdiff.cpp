#include "fracdiff/fracops.hpp"
#include "fracdiff/hahn.hpp"
#include "fracdiff/kernels.hpp"
#include "fracdiff/specfun.hpp"
#include "fracdiff/transfer.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace sf = fracdiff::specfun;
namespace t = fracdiff::transfer;

static void BM_Gauss2F1(benchmark::State &state) {
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::gauss_2f1(0.5, 1.5, 2.25, z));
    z = z < 0.9 ? z + 0.05 : 0.1;
  }
}
BENCHMARK(BM_Gauss2F1);

static void BM_KummerImaginary(benchmark::State &state) {
  const double w = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sf::kummer_m(2.5, 5.5, fracdiff::complex(0.0, w)));
}
BENCHMARK(BM_KummerImaginary)->Arg(5)->Arg(40)->Arg(400);

static void BM_GlTransform(benchmark::State &state) {
  fracdiff::sampled_signal s;
  s.delta = 0.01;
  s.causal = true;
  for (int k = 0; k < state.range(0); ++k) s.samples.push_back(std::sin(s.x(k)));
  for (auto _ : state) benchmark::DoNotOptimize(fracdiff::fracops::gl_transform(s, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GlTransform)->Range(256, 4096)->Complexity(benchmark::oNSquared);

static void BM_HahnWeights(benchmark::State &state) {
  fracdiff::hahn::hahn_params p;
  p.N = 7;
  p.nu = 0.5;
  p.M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fracdiff::hahn::hahn_weights(p));
}
BENCHMARK(BM_HahnWeights)->Arg(64)->Arg(512)->Arg(4096);

static void BM_GramClosedForm(benchmark::State &state) {
  for (auto _ : state) benchmark::DoNotOptimize(fracdiff::hahn::gram_n1_weights(7, 0.5, 1.0, 4096));
}
BENCHMARK(BM_GramClosedForm);

static void BM_JacobiSweep(benchmark::State &state) {
  fracdiff::kernels::jacobi_params p{0.5, 0.2, 2, 1.3, 0.4};
  const auto grid = t::make_grid(1e-2, 1e3, static_cast<int>(state.range(0)), t::spacing::logarithmic);
  for (auto _ : state)
    benchmark::DoNotOptimize(t::sweep([&](double w) { return t::jacobi_transfer(p, w); }, grid));
}
BENCHMARK(BM_JacobiSweep)->Arg(200);

static void BM_InterpolantWeights(benchmark::State &state) {
  fracdiff::kernels::jacobi_params p{-0.5, -0.5, 1, 0.6, 0.3};
  const int last = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fracdiff::kernels::kernel_interpolant_weights(
        [&](double anchor, double offset) { return fracdiff::kernels::jacobi_kernel(p, anchor, offset); }, -1.0,
        p.nu, p.delta, 0.01, last, {1.0}));
}
BENCHMARK(BM_InterpolantWeights)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
