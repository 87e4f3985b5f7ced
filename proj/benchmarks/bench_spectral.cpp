#include <benchmark/benchmark.h>

#include <random>

#include "volsal/spectral.hpp"

namespace {

using namespace volsal;

spectral::LocalCube make_cube(std::size_t side) {
  std::mt19937_64 rng(side);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  spectral::LocalCube cube(side);
  for (auto& s : cube.samples) s = dist(rng);
  return cube;
}

void BM_LocalFft(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto cube = make_cube(side);
  spectral::LocalFft fft(side);
  spectral::SpectralCube out;
  for (auto _ : state) {
    fft.forward(cube, out);
    benchmark::DoNotOptimize(out.values().data());
  }
}
BENCHMARK(BM_LocalFft)->Arg(3)->Arg(5)->Arg(9)->Arg(15);

void BM_OracleDft(benchmark::State& state) {
  const auto cube = make_cube(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral::oracle_dft(cube));
}
BENCHMARK(BM_OracleDft)->Arg(3)->Arg(5)->Arg(9);

void BM_ProjectAndEnergy(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto spectrum = spectral::local_fft(make_cube(side));
  const spectral::ProjectionFactors factors(side);
  spectral::ProjectedSpectra projected;
  for (auto _ : state) {
    spectral::project_spectrum(spectrum, factors, projected);
    benchmark::DoNotOptimize(spectral::energy_features(projected));
  }
}
BENCHMARK(BM_ProjectAndEnergy)->Arg(5)->Arg(9);

}  // namespace
