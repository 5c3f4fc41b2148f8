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
#include <vector>

#include "supermode/dispersion.hpp"
#include "supermode/spectral.hpp"

namespace supermode {

// Signal cavity linewidth gamma_s = Omega T_s / (4 pi), in s^-1.
double cavity_linewidth(const SpopoConfig& config);

// Geometry/resonance coefficient of the cw threshold. Throws MissingTp.
double geometry_coefficient(const SpopoConfig& config);

// Degenerate signal carrier omega_0 = pi c / lambda_pump.
double signal_carrier_frequency(const SpopoConfig& config);

// cw single-mode threshold irradiance under optimal focusing (A_p = A_s / 2), W/m^2.
double reference_threshold(const CrystalDispersion& crystal, const SpopoConfig& config);

struct ThresholdReport {
  double p0 = 0.0;         // W/m^2
  double p_thr = 0.0;      // W/m^2
  double power_thr = 0.0;  // W
  double lambda0 = 0.0;
  double pi0 = 0.0;
  double gamma_s = 0.0;    // s^-1
};

ThresholdReport spopo_threshold(double p0, double lambda0, double waist);
ThresholdReport threshold_report(const CrystalDispersion& crystal, const SpopoConfig& config, double lambda0);

// r = sqrt(P / P_thr).
double pump_ratio_from_irradiance(double irradiance, double p_thr);

struct RatePair {
  double plus = 0.0;
  double minus = 0.0;
};

std::vector<RatePair> rate_eigenvalues(const SupermodeBasis& basis, double r, double gamma_s);
bool is_stable(const std::vector<RatePair>& rates);

struct SweepRow {
  double length = 0.0;
  double kappa = 0.0;
  int half_width = 0;
  Regime regime = Regime::gaussian;
  double lambda0_numeric = 0.0;
  double lambda0_analytic = 0.0;
  double product_numeric = 0.0;   // Lambda_0 * l, m
  double product_analytic = 0.0;
  double p_thr = 0.0;             // from the numeric Lambda_0
  double power_thr = 0.0;
};

struct SweepOptions {
  std::optional<double> kappa;  // default: per-length regime choice
  int max_half_width = 2500;
  int threads = 1;
};

std::vector<SweepRow> length_sweep(const CrystalDispersion& crystal, const SpopoConfig& config,
                                   const std::vector<double>& lengths, const SweepOptions& options = {});

}  // namespace supermode
