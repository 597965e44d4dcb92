#include <benchmark/benchmark.h>

#include "gaugekit/abelian.hpp"
#include "gaugekit/bracket.hpp"
#include "gaugekit/dynamics.hpp"
#include "gaugekit/expr.hpp"

namespace {

using namespace gaugekit;

const char* kSource = "sin(x0 - 2*x3) * exp(x1*x2) / (2 + cos(x1)) + sqrt(1 + x2^2) * x0^3";

void BM_Parse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(kSource));
}
BENCHMARK(BM_Parse);

void BM_Differentiate(benchmark::State& state) {
  const Expr e = parse(kSource);
  for (auto _ : state) benchmark::DoNotOptimize(differentiate(e, 1));
}
BENCHMARK(BM_Differentiate);

void BM_CompiledEvaluate(benchmark::State& state) {
  const CompiledExpr c(parse(kSource), {});
  Point4 x{0.1, 0.2, 0.3, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(c(x));
    x[0] += 1e-9;
  }
}
BENCHMARK(BM_CompiledEvaluate);

void BM_FieldStrength(benchmark::State& state) {
  const AbelianField a = AbelianField::parse({"cos(x0 - x3)", "x0*x2^2", "sin(x1)*x3", "exp(x2 - x0)"});
  Point4 x{0.1, 0.2, 0.3, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(field_strength(a, x));
    x[1] += 1e-9;
  }
}
BENCHMARK(BM_FieldStrength);

void BM_VerifyPx(benchmark::State& state) {
  const MinimalCoupling c(AbelianField::parse({"0", "-B*x2/2", "B*x1/2", "0"}, ParamSet{{"B", 1.0}}), 1.0);
  Rng rng(1);
  const auto pts = sample_phase_points(Box{}, {}, {-2.0, 2.0}, 0, {-1.0, 1.0},
                                       static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(verify_px(c, pts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyPx)->Arg(100)->Arg(1000);

void BM_LorentzSteps(benchmark::State& state) {
  const AbelianField b = AbelianField::parse({"0", "-B*x2/2", "B*x1/2", "0"}, ParamSet{{"B", 1.0}});
  ParticleState s;
  s.u = ContravariantVector{{1.25, 0.75, 0.0, 0.0}};
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_lorentz(b, s, IntegratorOptions{1e-3, steps}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LorentzSteps)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
