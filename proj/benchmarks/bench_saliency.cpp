#include <benchmark/benchmark.h>

#include "volsal/saliency.hpp"
#include "volsal/synthkit.hpp"

namespace {

using namespace volsal;

Volume3 fault_volume(std::size_t n) {
  synth::SyntheticSpec spec;
  spec.dims = {n, n, n};
  spec.seed = 7;
  return synth::generate(spec).volume;
}

void BM_EnergyGrids(benchmark::State& state) {
  const auto vol = fault_volume(static_cast<std::size_t>(state.range(0)));
  const auto grid = spectral::build_window_grid(vol.dims(), 5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::compute_energy_grids(vol, grid, 1));
}
BENCHMARK(BM_EnergyGrids)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Saliency(benchmark::State& state) {
  const auto vol = fault_volume(static_cast<std::size_t>(state.range(0)));
  saliency::SaliencyParams params;
  params.cube_side = static_cast<std::size_t>(state.range(1));
  params.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(saliency::compute_saliency(vol, params));
}
BENCHMARK(BM_Saliency)->Args({64, 5})->Args({64, 9})->Args({128, 5})->Unit(benchmark::kMillisecond);

}  // namespace
