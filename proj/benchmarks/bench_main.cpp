// Micro-benchmarks for the hot paths: counter-based Gaussian generation,
// sampler steps across variants, and the analytic/quadrature oracles.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "lfl/builtin_potentials.hpp"
#include "lfl/divergences.hpp"
#include "lfl/gaussian_chain.hpp"
#include "lfl/rng.hpp"
#include "lfl/run_config.hpp"
#include "lfl/sampler.hpp"

namespace {

void BM_PhiloxGaussianBlock(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  std::vector<double> out(dim);
  std::uint64_t block = 0;
  for (auto _ : state) {
    lfl::gaussian_block(0x9e3779b97f4a7c15ull, 7, block++,
                        std::span<double>(out));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(dim));
}
BENCHMARK(BM_PhiloxGaussianBlock)->Arg(4)->Arg(64)->Arg(1024);

lfl::RunConfig step_config(lfl::Variant variant, std::uint32_t dim) {
  lfl::RunConfig config;
  config.variant = variant;
  config.schedule = lfl::StepSchedule::constant(0.01);
  config.n_steps = 1;
  config.dim = dim;
  config.n_chains = 1;
  config.master_seed = 42;
  config.init = lfl::InitLaw::gaussian(0.0, 1.0);
  if (variant == lfl::Variant::kVrLmc) config.vr_refresh_prob = 0.1;
  if (variant == lfl::Variant::kGsLmc) config.smoothing_eta = 0.01;
  return config;
}

void BM_SamplerStepQuadratic(benchmark::State& state) {
  const std::uint32_t dim = static_cast<std::uint32_t>(state.range(0));
  const lfl::Sampler sampler(step_config(lfl::Variant::kLmc, dim),
                             std::make_shared<lfl::Quadratic>(1.0, dim));
  lfl::ChainState chain = sampler.initial_state(0);
  for (auto _ : state) {
    sampler.step(chain);
    benchmark::DoNotOptimize(chain.x.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_SamplerStepQuadratic)->Arg(1)->Arg(16)->Arg(256);

void BM_SamplerStepVrFiniteSum(benchmark::State& state) {
  const auto n_components = static_cast<std::size_t>(state.range(0));
  const lfl::Sampler sampler(
      step_config(lfl::Variant::kVrLmc, 1),
      std::make_shared<lfl::FiniteSumQuadratic>(
          lfl::unit_grid_finite_sum(n_components)));
  lfl::ChainState chain = sampler.initial_state(0);
  for (auto _ : state) {
    sampler.step(chain);
    benchmark::DoNotOptimize(chain.x.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_SamplerStepVrFiniteSum)->Arg(10)->Arg(100);

void BM_GaussianChainTrajectory(benchmark::State& state) {
  const auto n_steps = static_cast<std::uint32_t>(state.range(0));
  const lfl::GaussianLaw init{1.0, 4.0, 1};
  for (auto _ : state) {
    const lfl::GaussianTrajectory traj =
        lfl::lmc_gaussian_trajectory(1.0, 0.01, n_steps, init);
    benchmark::DoNotOptimize(traj.time_avg_fi);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          n_steps);
}
BENCHMARK(BM_GaussianChainTrajectory)->Arg(100)->Arg(1000);

void BM_MixtureQuadrature(benchmark::State& state) {
  const lfl::GaussianMixture1D mu = lfl::skewed_bimodal(3.0);
  const lfl::GaussianMixture1D pi = lfl::symmetric_bimodal(3.0);
  for (auto _ : state) {
    const lfl::Divergences dv = lfl::quad_divergences(mu, pi);
    benchmark::DoNotOptimize(dv.fi);
  }
}
BENCHMARK(BM_MixtureQuadrature);

}  // namespace

BENCHMARK_MAIN();
