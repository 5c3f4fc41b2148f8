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

#include "supermode/threshold.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "supermode/errors.hpp"

namespace supermode {

namespace {

constexpr double speed_of_light = 299792458.0;
constexpr double vacuum_permittivity = 8.8541878128e-12;

}  // namespace

double cavity_linewidth(const SpopoConfig& config) {
  return config.free_spectral_range * config.signal_mirror_transmission / (4.0 * std::numbers::pi);
}

double geometry_coefficient(const SpopoConfig& config) {
  if (config.resonance == Resonance::singly) return 1.0;
  if (!config.pump_mirror_transmission) throw MissingTp();
  const double tp = *config.pump_mirror_transmission;
  return config.geometry == CavityGeometry::ring ? tp / 4.0 : tp / 16.0;
}

double signal_carrier_frequency(const SpopoConfig& config) {
  return std::numbers::pi * speed_of_light / config.pump_center_wavelength;
}

double reference_threshold(const CrystalDispersion& crystal, const SpopoConfig& config) {
  const double pi0 = geometry_coefficient(config);
  const double c3 = speed_of_light * speed_of_light * speed_of_light;
  const double ts = config.signal_mirror_transmission;
  const double g = crystal.chi * crystal.length * signal_carrier_frequency(config);
  return pi0 * vacuum_permittivity * c3 * crystal.n0 * crystal.n0 * ts * ts / (2.0 * g * g);
}

ThresholdReport spopo_threshold(double p0, double lambda0, double waist) {
  if (!(lambda0 > 0.0)) throw InvalidParameter("threshold needs a positive leading eigenvalue");
  ThresholdReport t;
  t.p0 = p0;
  t.lambda0 = lambda0;
  t.p_thr = p0 / (lambda0 * lambda0);
  t.power_thr = t.p_thr * std::numbers::pi * waist * waist;
  return t;
}

ThresholdReport threshold_report(const CrystalDispersion& crystal, const SpopoConfig& config, double lambda0) {
  ThresholdReport t = spopo_threshold(reference_threshold(crystal, config), std::abs(lambda0), config.pump_waist);
  t.pi0 = geometry_coefficient(config);
  t.gamma_s = cavity_linewidth(config);
  return t;
}

double pump_ratio_from_irradiance(double irradiance, double p_thr) {
  if (!(p_thr > 0.0) || !(irradiance >= 0.0)) throw InvalidParameter("invalid irradiance or threshold");
  return std::sqrt(irradiance / p_thr);
}

std::vector<RatePair> rate_eigenvalues(const SupermodeBasis& basis, double r, double gamma_s) {
  if (!(r >= 0.0)) throw InvalidParameter("pump ratio must be non-negative");
  const double lead = std::abs(basis.lambda0());
  std::vector<RatePair> out;
  out.reserve(basis.spectrum().size());
  for (double lambda : basis.spectrum()) {
    const double x = r * lambda / lead;
    out.push_back({gamma_s * (-1.0 + x), gamma_s * (-1.0 - x)});
  }
  return out;
}

bool is_stable(const std::vector<RatePair>& rates) {
  return std::all_of(rates.begin(), rates.end(), [](const RatePair& p) { return p.plus < 0.0 && p.minus < 0.0; });
}

std::vector<SweepRow> length_sweep(const CrystalDispersion& crystal, const SpopoConfig& config,
                                   const std::vector<double>& lengths, const SweepOptions& options) {
  if (!std::is_sorted(lengths.begin(), lengths.end())) throw InvalidParameter("sweep lengths must be ascending");
  std::vector<SweepRow> rows(lengths.size());

  auto work = [&](std::size_t i) {
    const CrystalDispersion c = crystal.with_length(lengths[i]);
    SweepRow& row = rows[i];
    row.length = lengths[i];
    row.regime = gaussian_validity(c, config).regime;
    row.kappa = options.kappa.value_or(default_kappa(row.regime));
    SolveOptions solve;
    solve.kappa = row.kappa;
    solve.max_half_width = options.max_half_width;
    solve.diagonalize.compute_vectors = false;
    const SupermodeBasis basis = solve_supermodes(c, config, solve);
    row.half_width = basis.grid().half_width;
    row.lambda0_numeric = basis.lambda0();
    row.lambda0_analytic = analytic_eigensystem(c, config).lambda0;
    row.product_numeric = row.lambda0_numeric * row.length;
    row.product_analytic = row.lambda0_analytic * row.length;
    const ThresholdReport t = threshold_report(c, config, row.lambda0_numeric);
    row.p_thr = t.p_thr;
    row.power_thr = t.power_thr;
  };

  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.threads, 1)), 1,
                                                      std::max<std::size_t>(lengths.size(), 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto drain = [&] {
    for (std::size_t i = next++; i < lengths.size(); i = next++) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(drain);
  drain();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace supermode
