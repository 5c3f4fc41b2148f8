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

#include <Eigen/Dense>
#include <vector>

#include "supermode/dispersion.hpp"

namespace supermode {

// Scaled comb grid: indices -M..M, physical index = kappa * scaled index.
struct ModeGrid {
  double kappa = 1.0;
  int half_width = 0;
  double omega = 0.0;

  int size() const { return 2 * half_width + 1; }
  void validate() const;
  bool operator==(const ModeGrid&) const = default;
};

// Pump amplitude as a function of the physical sum index m + q.
class PumpSpectrum {
 public:
  static PumpSpectrum gaussian(double n_p);
  // Samples alpha(s) at s = (i - center) * step, linearly interpolated, zero outside.
  static PumpSpectrum sampled(std::vector<double> amplitudes, int center, double step = 1.0);

  double amplitude(double s) const;
  // Amplitude on the scaled grid: sqrt(kappa) * alpha(kappa * s).
  double scaled_amplitude(double s, double kappa) const;
  // Width in physical modes used for grid sizing (N_p, or the rms width of samples).
  double width() const { return width_; }
  bool is_gaussian() const { return samples_.empty(); }

 private:
  double n_p_ = 0.0;
  std::vector<double> samples_;
  int center_ = 0;
  double step_ = 1.0;
  double width_ = 0.0;
};

double phase_mismatch_angle(double beta1, double beta2p, double beta2s, double m, double q);
double sinc_factor(double phi);
double pump_spectrum(double n_p, double m, double kappa);

class CouplingMatrix {
 public:
  CouplingMatrix(ModeGrid grid, Eigen::MatrixXd entries, double pump_norm_check = 0.0);

  const ModeGrid& grid() const { return grid_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double pump_norm_check() const { return pump_norm_check_; }
  // Scaled indices m, q in [-M, M].
  double operator()(int m, int q) const {
    return entries_(m + grid_.half_width, q + grid_.half_width);
  }
  int size() const { return static_cast<int>(entries_.rows()); }

 private:
  ModeGrid grid_;
  Eigen::MatrixXd entries_;
  double pump_norm_check_;
};

// Minimum half-width accepted by the builders: 5 * max(N'_p, N'_1).
double required_half_width(const CrystalDispersion& crystal, const SpopoConfig& config, double kappa,
                           double pump_width);

// Default kappa for a regime: 1000 unless the configuration is clearly non-Gaussian.
double default_kappa(Regime regime);

// Half-width that covers the pump band and the phase-matching hyperbola out to
// the second sinc lobe.
ModeGrid default_grid(const CrystalDispersion& crystal, const SpopoConfig& config, double kappa);

CouplingMatrix build_coupling_matrix(const CrystalDispersion& crystal, const SpopoConfig& config,
                                     const ModeGrid& grid);
CouplingMatrix build_coupling_matrix(const CrystalDispersion& crystal, const SpopoConfig& config,
                                     const ModeGrid& grid, const PumpSpectrum& pump);

CouplingMatrix gaussian_coupling_matrix(const CrystalDispersion& crystal, const SpopoConfig& config,
                                        const ModeGrid& grid);

}  // namespace supermode
