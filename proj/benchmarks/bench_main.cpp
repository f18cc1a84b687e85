#include <benchmark/benchmark.h>

#include "ipl/angle_sampler.hpp"
#include "ipl/homogeneous_sim.hpp"
#include "ipl/kernel.hpp"
#include "ipl/scattering.hpp"
#include "ipl/singular_layer.hpp"

namespace {

void BM_phi_of_x(benchmark::State& state) {
  const ipl::InteractionParams p = ipl::InteractionParams::power_law(static_cast<double>(state.range(0)));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ipl::phi_of_x(p, x));
    x = x < 0.99 ? x + 0.01 : 0.1;
  }
}
BENCHMARK(BM_phi_of_x)->Arg(3)->Arg(10)->Arg(100);

void BM_angular_kernel_b(benchmark::State& state) {
  const ipl::InteractionParams p = ipl::InteractionParams::power_law(static_cast<double>(state.range(0)));
  const double theta = state.range(1) == 0 ? 1e-3 : 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(ipl::angular_kernel_b(p, theta));
}
BENCHMARK(BM_angular_kernel_b)->Args({7, 0})->Args({7, 1})->Args({200, 1});

void BM_psi_inf(benchmark::State& state) {
  const double xi = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ipl::psi_inf(xi));
}
BENCHMARK(BM_psi_inf)->Arg(1)->Arg(100)->Arg(10000);

void BM_phi_layer(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ipl::phi_layer(2.0));
}
BENCHMARK(BM_phi_layer);

void BM_dsmc_step(benchmark::State& state) {
  const ipl::InteractionParams p =
      state.range(0) == 0 ? ipl::InteractionParams::hard_sphere() : ipl::InteractionParams::power_law(7.0);
  const ipl::AngleSampler sampler = ipl::AngleSampler::build(p, 1e-2);
  ipl::ParticleEnsemble ens = ipl::initial_ensemble(ipl::InitialCondition::bimodal, 10000, 1);
  for (auto _ : state) {
    ipl::dsmc_step(ens, sampler, 0.05, 1.5 * ipl::max_speed(ens));
  }
  state.SetItemsProcessed(ens.collisions);
}
BENCHMARK(BM_dsmc_step)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
