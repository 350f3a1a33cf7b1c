#include <benchmark/benchmark.h>

#include <numbers>

#include "logbouss/evolve.hpp"
#include "logbouss/fft.hpp"
#include "logbouss/initial_data.hpp"
#include "logbouss/kernel.hpp"
#include "logbouss/littlewood_paley.hpp"

using namespace logbouss;

static void BM_ForwardInverseFft(benchmark::State& state) {
  const Grid2D g(static_cast<int>(state.range(0)));
  const auto f = random_band_limited(g, 1, g.n() / 4.0);
  const auto& fft = FourierTransform::for_size(g.n());
  ComplexVector c;
  RealVector v;
  for (auto _ : state) {
    fft.forward(f.value_vector(), c);
    fft.inverse(c, v);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_ForwardInverseFft)->Arg(128)->Arg(256)->Arg(512);

static void BM_ApplyDissipation(benchmark::State& state) {
  const Grid2D g(static_cast<int>(state.range(0)));
  const auto f = random_band_limited(g, 2, g.n() / 4.0);
  const SymbolTable m(g, PhiParams::at_threshold(1.0, 1.0).symbol());
  for (auto _ : state) benchmark::DoNotOptimize(apply_multiplier(f, m));
}
BENCHMARK(BM_ApplyDissipation)->Arg(128)->Arg(256)->Arg(512);

static void BM_DyadicBlocks(benchmark::State& state) {
  const Grid2D g(static_cast<int>(state.range(0)));
  const DyadicFilterBank bank(g);
  const auto f = random_band_limited(g, 3, bank.resolved_radius());
  for (auto _ : state) benchmark::DoNotOptimize(block_lp_norms(f, 2.0, bank));
}
BENCHMARK(BM_DyadicBlocks)->Arg(128)->Arg(256);

static void BM_StepTd(benchmark::State& state) {
  const Grid2D g(static_cast<int>(state.range(0)));
  TDProblem problem(gaussian_bump(g, std::numbers::pi, std::numbers::pi, 0.5),
                    PrescribedVelocity::constant_in_time(shear_velocity(g), "shear"), 1.0,
                    PhiParams::at_threshold(1.0, 1.0).symbol());
  const TdStepper stepper(problem, 0.01);
  SpectralField theta = problem.theta0;
  for (auto _ : state) theta = stepper.step(theta, 0.0);
}
BENCHMARK(BM_StepTd)->Arg(128)->Arg(256);

static void BM_StepBoussinesq(benchmark::State& state) {
  const Grid2D g(static_cast<int>(state.range(0)));
  BoussinesqProblem problem(random_band_limited(g, 4, 4.0), gaussian_bump(g, 3.0, 3.0, 0.5),
                            PhiParams::at_threshold(0.5, 1.0), 0.01, 1.0);
  const BoussinesqStepper stepper(problem);
  BoussinesqState s{0.0, problem.omega0, problem.theta0};
  for (auto _ : state) s = stepper.step(s);
}
BENCHMARK(BM_StepBoussinesq)->Arg(128)->Arg(256);

static void BM_KernelValue(benchmark::State& state) {
  const PhiParams p = PhiParams::at_threshold(1.0, 0.5);
  const double r = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(kernel_value(r, 1.0, p, 3));
}
BENCHMARK(BM_KernelValue)->Arg(0)->Arg(5)->Arg(50);

static void BM_KernelMass(benchmark::State& state) {
  const PhiParams p = PhiParams::at_threshold(0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_mass(1.0, p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_KernelMass)->Arg(1)->Arg(3);
BENCHMARK_MAIN();
