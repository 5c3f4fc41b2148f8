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

#include "supermode/dispersion.hpp"

#include <cmath>

#include "supermode/errors.hpp"

namespace supermode {

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void CrystalDispersion::validate() const {
  if (!(length > 0.0) || !finite(length)) throw InvalidParameter("crystal length must be positive");
  if (!(n0 >= 1.0) || !finite(n0)) throw InvalidParameter("crystal n0 must be >= 1");
  if (!(kp_prime > 0.0) || !(ks_prime > 0.0) || !finite(kp_prime) || !finite(ks_prime)) {
    throw InvalidParameter("group slowness k' must be positive");
  }
  if (!finite(kp_double_prime) || !finite(ks_double_prime)) {
    throw InvalidParameter("group-velocity dispersion must be finite");
  }
  if (!(chi > 0.0) || !finite(chi)) throw InvalidParameter("crystal chi must be positive");
}

CrystalDispersion CrystalDispersion::with_length(double l) const {
  CrystalDispersion c = *this;
  c.length = l;
  return c;
}

const char* to_string(CavityGeometry g) { return g == CavityGeometry::ring ? "ring" : "linear"; }
const char* to_string(Resonance r) { return r == Resonance::singly ? "singly" : "doubly"; }

const char* to_string(Regime r) {
  switch (r) {
    case Regime::gaussian: return "gaussian";
    case Regime::borderline: return "borderline";
    case Regime::non_gaussian: return "non-gaussian";
  }
  return "?";
}

void SpopoConfig::validate() const {
  if (!(free_spectral_range > 0.0) || !finite(free_spectral_range)) {
    throw InvalidParameter("free_spectral_range must be positive");
  }
  if (!(pump_pulse_duration > 0.0) || !finite(pump_pulse_duration)) {
    throw InvalidParameter("pump_pulse_duration must be positive");
  }
  if (!(pump_center_wavelength > 0.0)) throw InvalidParameter("pump_center_wavelength must be positive");
  if (!(signal_mirror_transmission > 0.0 && signal_mirror_transmission < 1.0)) {
    throw InvalidParameter("signal_mirror_transmission must lie in (0, 1)");
  }
  if (pump_mirror_transmission && !(*pump_mirror_transmission > 0.0 && *pump_mirror_transmission <= 1.0)) {
    throw InvalidParameter("pump_mirror_transmission must lie in (0, 1]");
  }
  if (resonance == Resonance::doubly && !pump_mirror_transmission) throw MissingTp();
  if (!(pump_waist > 0.0)) throw InvalidParameter("pump_waist must be positive");
  if (signal_waist && !(*signal_waist > 0.0)) throw InvalidParameter("signal_waist must be positive");
  if (pump_ratio.has_value() == pump_irradiance.has_value()) throw ConflictingPump();
  if (pump_ratio && !(*pump_ratio >= 0.0 && finite(*pump_ratio))) {
    throw InvalidParameter("pump_ratio must be non-negative");
  }
  if (pump_irradiance && !(*pump_irradiance >= 0.0 && finite(*pump_irradiance))) {
    throw InvalidParameter("pump_irradiance must be non-negative");
  }
  if (!(pump_count() > 1.0)) throw InvalidParameter("pump must span more than one comb mode (N_p > 1)");
}

double SpopoConfig::pump_count() const { return 1.0 / (free_spectral_range * pump_pulse_duration); }

double SpopoConfig::effective_signal_waist() const {
  return signal_waist.value_or(std::sqrt(2.0) * pump_waist);
}

DispersionCoefficients beta_coefficients(const CrystalDispersion& crystal, double omega) {
  const double l = crystal.length;
  return {0.5 * omega * (crystal.kp_prime - crystal.ks_prime) * l,
          0.25 * omega * omega * crystal.kp_double_prime * l,
          0.25 * omega * omega * crystal.ks_double_prime * l};
}

CharacteristicTimes characteristic_times(const CrystalDispersion& crystal) {
  const double l = crystal.length;
  return {std::abs(crystal.kp_prime - crystal.ks_prime) * l / std::sqrt(10.0),
          std::sqrt(std::abs(crystal.ks_double_prime) * l) / (4.0 * std::sqrt(3.0))};
}

ValidityVerdict gaussian_validity(const CrystalDispersion& crystal, const SpopoConfig& config) {
  ValidityVerdict v;
  const double dk = std::abs(crystal.kp_prime - crystal.ks_prime);
  v.pulse_bound = dk * crystal.length;
  v.pulse_margin = v.pulse_bound > 0.0 ? config.pump_pulse_duration / v.pulse_bound : INFINITY;
  v.pulse_condition = config.pump_pulse_duration > v.pulse_bound;

  const double gvd = std::abs(crystal.kp_double_prime - 0.5 * crystal.ks_double_prime);
  v.length_bound = dk > 0.0 ? 20.0 * gvd / (dk * dk) : INFINITY;
  v.length_margin = v.length_bound > 0.0 ? crystal.length / v.length_bound : INFINITY;
  v.length_condition = crystal.length > v.length_bound;

  if (v.pulse_condition && v.length_condition) {
    v.regime = Regime::gaussian;
  } else if (v.pulse_margin >= 0.5 && v.length_condition) {
    v.regime = Regime::borderline;
  } else {
    v.regime = Regime::non_gaussian;
  }
  return v;
}

const std::vector<CrystalPreset>& crystal_presets() {
  // chi is calibrated against the reference thresholds at n0 = 1.78; only chi/n0 enters.
  static const std::vector<CrystalPreset> presets = [] {
    CrystalDispersion bibo;
    bibo.label = "bibo-0.4um-typeI";
    bibo.kp_prime = 6.6537e-9;
    bibo.kp_double_prime = 4.7248e-25;
    bibo.ks_prime = 6.2664e-9;
    bibo.ks_double_prime = 1.6420e-25;
    bibo.chi = 2.2490456e-12;
    bibo.n0 = 1.78;
    bibo.length = 1e-4;
    return std::vector<CrystalPreset>{
        {"bibo-0.4um-typeI", "BiBO, type I, 0.4 um pump, degenerate 0.8 um signal", bibo},
        {"knbo3", "KNbO3 slot; no shipped values, every crystal field must be supplied", std::nullopt},
    };
  }();
  return presets;
}

const CrystalPreset& find_preset(std::string_view name) {
  for (const auto& p : crystal_presets()) {
    if (p.name == name) return p;
  }
  throw UnknownPreset(std::string(name));
}

CrystalDispersion resolve_preset(std::string_view name, double length) {
  const auto& preset = find_preset(name);
  if (!preset.values) throw IncompletePreset(preset.name);
  return preset.values->with_length(length);
}

}  // namespace supermode
