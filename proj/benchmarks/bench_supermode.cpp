// Copyright 2026 supermode-lab contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>

#include "supermode/coupling.hpp"
#include "supermode/dispersion.hpp"
#include "supermode/spectral.hpp"
#include "supermode/squeezing.hpp"

namespace {

using namespace supermode;

SpopoConfig comb() {
  SpopoConfig c;
  c.free_spectral_range = 2.0 * std::numbers::pi * 75e6;
  c.pump_pulse_duration = 100e-15;
  c.pump_center_wavelength = 0.4e-6;
  c.signal_mirror_transmission = 0.01;
  c.pump_waist = 70e-6;
  c.pump_ratio = 0.9;
  return c;
}

// Case A crystal at a coarser kappa so the grid half-width is the benchmark argument.
ModeGrid grid_for(int half_width) {
  const double kappa = 1000.0 * 1941.0 / half_width;
  return {kappa, half_width, comb().free_spectral_range};
}

void BM_BuildCoupling(benchmark::State& state) {
  const auto crystal = resolve_preset("bibo-0.4um-typeI", 1e-4);
  const auto grid = grid_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_coupling_matrix(crystal, comb(), grid));
  state.SetComplexityN(grid.size());
}
BENCHMARK(BM_BuildCoupling)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

void BM_Diagonalize(benchmark::State& state) {
  const auto crystal = resolve_preset("bibo-0.4um-typeI", 1e-4);
  const auto matrix = build_coupling_matrix(crystal, comb(), grid_for(static_cast<int>(state.range(0))));
  DiagonalizeOptions options;
  options.compute_vectors = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(matrix, options));
}
BENCHMARK(BM_Diagonalize)
    ->ArgsProduct({{256, 512, 1024}, {0, 1}})
    ->ArgNames({"M", "vectors"})
    ->Unit(benchmark::kMillisecond);

void BM_HomodyneGaussHermite(benchmark::State& state) {
  const auto crystal = resolve_preset("bibo-0.4um-typeI", 1e-4);
  const auto basis = diagonalize(build_coupling_matrix(crystal, comb(), grid_for(512)));
  const auto lo = gauss_hermite_lo(static_cast<int>(state.range(0)), 2.2e5, std::numbers::pi / 2, basis_window(basis));
  for (auto _ : state) benchmark::DoNotOptimize(homodyne_spectrum(basis, lo, 0.9, 0.0));
}
BENCHMARK(BM_HomodyneGaussHermite)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_OptimizeLo(benchmark::State& state) {
  const auto crystal = resolve_preset("bibo-0.4um-typeI", 1e-4);
  const auto basis = diagonalize(build_coupling_matrix(crystal, comb(), grid_for(512)));
  for (auto _ : state) benchmark::DoNotOptimize(optimize_gh_lo(basis, 0, 0.9, 0.0));
}
BENCHMARK(BM_OptimizeLo)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
