#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "openmult/graph_factorizer.hpp"
#include "openmult/interval_factorizer.hpp"
#include "openmult/inversion_scheme.hpp"
#include "openmult/pointwise_factorizer.hpp"

using namespace openmult;

namespace {

Complex f_of(double t) { return Complex(t - 0.4, 0.3 * std::sin(5 * t)); }
Complex g_of(double t) { return Complex(std::cos(3 * t), t - 0.6); }
Complex d_of(double t) { return Complex(std::cos(11 * t), std::sin(7 * t)) / std::sqrt(2.0); }

void BM_OpenMultInterval(benchmark::State& state) {
  const IntervalDomain dom(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const double eps0 = 0.35;
  const auto f = GridFunction::sample(dom, f_of);
  const auto g = GridFunction::sample(dom, g_of);
  const auto d = delta0(eps0) * GridFunction::sample(dom, d_of);
  for (auto _ : state) benchmark::DoNotOptimize(open_mult_interval(f, g, d, eps0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OpenMultInterval)->Arg(257)->Arg(1025)->Arg(4097)->Arg(16385)->Complexity();

void BM_RunScheme(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  SupNormModel model(n);
  AlgebraElement F{std::vector<Complex>(n)};
  AlgebraElement G{std::vector<Complex>(n)};
  AlgebraElement H{std::vector<Complex>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    F.coords[k] = f_of(t);
    G.coords[k] = g_of(t) + 1.0;
    H.coords[k] = d_of(t);
  }
  const SchemeParams p = scheme_params(F, G, 0.5, model);
  H = model.scale(0.5 * p.delta / model.norm(H), H);
  for (auto _ : state) benchmark::DoNotOptimize(run_scheme(F, G, H, p, model));
}
BENCHMARK(BM_RunScheme)->RangeMultiplier(4)->Range(64, 4096);

void BM_ScalarFactor(benchmark::State& state) {
  const Complex x(0.3, -0.1);
  const Complex y(0.02, 0.05);
  const Complex w = std::polar(0.0625, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(scalar_factor(x, y, w, 0.5));
}
BENCHMARK(BM_ScalarFactor);

void BM_QuadraticCorrection(benchmark::State& state) {
  const IntervalDomain dom(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const auto f = GridFunction::sample(dom, [](double t) { return Complex(1.5 + std::cos(3 * t), 0.2); });
  const auto g = GridFunction::sample(dom, [](double t) { return std::exp(Complex(0, 2 * t)); });
  const double eta = 0.4;
  const auto d = (0.5 * correction_radius(eta, 0.5)) * GridFunction::sample(dom, d_of);
  for (auto _ : state) benchmark::DoNotOptimize(quadratic_correction(f, g, d, eta, 0.5));
}
BENCHMARK(BM_QuadraticCorrection)->Arg(257)->Arg(1025)->Arg(4097)->Arg(16385);

}  // namespace
BENCHMARK_MAIN();
