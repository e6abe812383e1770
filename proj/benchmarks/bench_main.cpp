#include <cvlab/curvature.hpp>
#include <cvlab/metric_dsl.hpp>
#include <cvlab/quadrature.hpp>
#include <cvlab/sweep.hpp>
#include <cvlab/zoo.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace cvlab;

static void BM_GaussKronrodPanel(benchmark::State& state) {
  double a = 0.0;
  for (auto _ : state) {
    auto r =
        gauss_kronrod_15([](double x) { return std::exp(-x * x); }, a, 1.0);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_GaussKronrodPanel);

static void BM_IntegrateCircle(benchmark::State& state) {
  for (auto _ : state) {
    auto r =
        integrate_circle([](double t) { return std::exp(std::sin(t)); }, {});
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_IntegrateCircle);

static void BM_EvalJet(benchmark::State& state) {
  const MetricExpr e = parse_metric("cosh(t)^2 * (1 + 0.5*cos(theta))");
  double t = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_jet(e, t, 1.0));
    t += 1e-9;
  }
}
BENCHMARK(BM_EvalJet);

static void BM_CurvatureDensity(benchmark::State& state) {
  const auto z = make_catenoid();
  for (auto _ : state)
    benchmark::DoNotOptimize(curvature_density(z.model.ends[0], 1.5, 0.2));
}
BENCHMARK(BM_CurvatureDensity);

static void BM_ZooSweep(benchmark::State& state) {
  const auto& name = zoo_names()[state.range(0)];
  const auto z = make_zoo_entry(name);
  const auto schedule = spaced_schedule(z.h_min, z.h_max, z.steps);
  state.SetLabel(name);
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(z.model, schedule));
}
BENCHMARK(BM_ZooSweep)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
