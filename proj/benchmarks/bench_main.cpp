#include <benchmark/benchmark.h>

#include "boltzgap/carleman.hpp"
#include "boltzgap/evolve.hpp"
#include "boltzgap/spectral.hpp"

using namespace boltzgap;

namespace {

const ModelSpec kHs{3, 1.0, 1.0, WeightSpec::unit()};
const ModelSpec kSoft{3, -1.0, 1.0, WeightSpec::unit()};

void BM_KernelGamma(benchmark::State& state) {
  const ModelSpec spec{3, -1.0, 1.0, WeightSpec::unit()};
  const KernelPoint p{1.3, 2.1, 1.7};
  for (auto _ : state) benchmark::DoNotOptimize(kernel_gamma(p, spec));
}
BENCHMARK(BM_KernelGamma);

void BM_ReducedKernel(benchmark::State& state) {
  const ModelSpec& spec = state.range(0) ? kSoft : kHs;
  for (auto _ : state) benchmark::DoNotOptimize(reduced_kernel(1.3, 2.1, spec));
}
BENCHMARK(BM_ReducedKernel)->Arg(0)->Arg(1);

void BM_CollisionFrequency(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(collision_frequency(2.5, kSoft));
}
BENCHMARK(BM_CollisionFrequency);

void BM_AssembleHard(benchmark::State& state) {
  const RadialGrid g = build_grid(static_cast<int>(state.range(0)), 16, 8.0, 3);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(g, kHs).gain.data());
}
BENCHMARK(BM_AssembleHard)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  const GeneratorMatrix gen = assemble(build_grid(static_cast<int>(state.range(0)), 16, 8.0, 3), kHs);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(gen).lambda_star);
}
BENCHMARK(BM_Spectrum)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ResolventNorm(benchmark::State& state) {
  const GeneratorMatrix gen = assemble(build_grid(64, 16, 8.0, 3), kHs);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_norm(gen, 1.0));
}
BENCHMARK(BM_ResolventNorm)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const GeneratorMatrix gen = make_column_stochastic(assemble(build_grid(64, 16, 8.0, 3), kHs));
  const Eigen::VectorXd f0 = maxwellian_vector(gen.grid);
  EvolveOptions opt;
  opt.t_end = 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(gen, f0, opt).norms.back());
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
