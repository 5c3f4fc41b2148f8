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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace supermode {

// Phase-matched crystal, SI units throughout.
struct CrystalDispersion {
  std::string label;
  double kp_prime = 0.0;         // s/m
  double kp_double_prime = 0.0;  // s^2/m
  double ks_prime = 0.0;         // s/m
  double ks_double_prime = 0.0;  // s^2/m
  double chi = 0.0;              // m/V
  double n0 = 1.0;
  double length = 0.0;           // m

  void validate() const;
  CrystalDispersion with_length(double l) const;
  bool operator==(const CrystalDispersion&) const = default;
};

enum class CavityGeometry { ring, linear };
enum class Resonance { singly, doubly };

const char* to_string(CavityGeometry g);
const char* to_string(Resonance r);

struct SpopoConfig {
  double free_spectral_range = 0.0;       // rad/s
  double pump_pulse_duration = 0.0;       // s
  double pump_center_wavelength = 0.0;    // m
  double signal_mirror_transmission = 0.0;
  std::optional<double> pump_mirror_transmission;
  CavityGeometry geometry = CavityGeometry::linear;
  Resonance resonance = Resonance::singly;
  double pump_waist = 0.0;                // m
  std::optional<double> signal_waist;     // m, defaults to sqrt(2)*pump_waist
  std::optional<double> pump_ratio;
  std::optional<double> pump_irradiance;  // W/m^2

  void validate() const;
  double pump_count() const;  // N_p = 1/(Omega tau_p)
  double effective_signal_waist() const;
  bool operator==(const SpopoConfig&) const = default;
};

struct DispersionCoefficients {
  double beta1 = 0.0;
  double beta2p = 0.0;
  double beta2s = 0.0;

  DispersionCoefficients scaled(double kappa) const {
    return {kappa * beta1, kappa * kappa * beta2p, kappa * kappa * beta2s};
  }
};

DispersionCoefficients beta_coefficients(const CrystalDispersion& crystal, double omega);

struct CharacteristicTimes {
  double tau1 = 0.0;  // s
  double tau2 = 0.0;  // s
};

CharacteristicTimes characteristic_times(const CrystalDispersion& crystal);

enum class Regime { gaussian, borderline, non_gaussian };
const char* to_string(Regime r);

struct ValidityVerdict {
  bool pulse_condition = false;   // tau_p > |dk'| l
  double pulse_bound = 0.0;       // s
  double pulse_margin = 0.0;      // tau_p / bound
  bool length_condition = false;  // l > 20 |k''_p - k''_s/2| / dk'^2
  double length_bound = 0.0;      // m
  double length_margin = 0.0;     // l / bound
  Regime regime = Regime::non_gaussian;
};

// Borderline: the pulse bound is missed by less than a factor of two.
ValidityVerdict gaussian_validity(const CrystalDispersion& crystal, const SpopoConfig& config);

struct CrystalPreset {
  std::string name;
  std::string description;
  std::optional<CrystalDispersion> values;  // empty: caller supplies every field
};

const std::vector<CrystalPreset>& crystal_presets();
const CrystalPreset& find_preset(std::string_view name);

// Looks up a preset with shipped values and sets the crystal length.
CrystalDispersion resolve_preset(std::string_view name, double length);

}  // namespace supermode
