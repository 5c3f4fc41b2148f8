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

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "supermode/spectral.hpp"

namespace supermode {

enum class Quadrature { plus, minus };

// Output/input ratio of a supermode quadrature. w is the noise frequency in
// units of the signal cavity linewidth.
std::complex<double> quadrature_transfer(double lam_ratio, double r, double w, Quadrature sign);

// v(w) v(-w); shot noise is 1.
double quadrature_variance(double lam_ratio, double r, double w, Quadrature sign);

// Best achievable variance (threshold, zero frequency).
double min_variance(double lam_k, double lam_0);

inline double to_db(double v) { return 10.0 * std::log10(v); }

// Sampling of a physical comb window: points j * stride for |j| <= half_width.
struct ModeWindow {
  int half_width = 0;
  double stride = 1.0;
  bool operator==(const ModeWindow&) const = default;
};

ModeWindow basis_window(const SupermodeBasis& basis);

class LocalOscillator {
 public:
  LocalOscillator(ModeWindow window, std::vector<std::complex<double>> amplitudes, std::string descriptor);

  const ModeWindow& window() const { return window_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
  const std::string& descriptor() const { return descriptor_; }
  double normalization() const;

 private:
  ModeWindow window_;
  std::vector<std::complex<double>> amplitudes_;
  std::string descriptor_;
};

// Hermite-Gauss comb of order k and physical width n_l, discretely normalized on `window`.
LocalOscillator gauss_hermite_lo(int k, double n_l, double phase, const ModeWindow& window);
LocalOscillator supermode_lo(const SupermodeBasis& basis, int k, double phase);

// d_k for every retained supermode. The LO must sit on the basis window or on
// the unit-stride physical grid inside the basis reach.
std::vector<std::complex<double>> lo_projections(const SupermodeBasis& basis, const LocalOscillator& lo);

struct HomodyneResult {
  double variance = 1.0;
  double residual_weight = 0.0;  // LO weight outside the basis, counted as shot noise
  bool incomplete = false;
};

HomodyneResult homodyne_spectrum(const SupermodeBasis& basis, const LocalOscillator& lo, double r, double w);

enum class LoObjective { minimum_variance, maximum_overlap };
const char* to_string(LoObjective o);

struct LoSearchOptions {
  LoObjective objective = LoObjective::minimum_variance;
  double n_min = 0.0;  // 0: bracket around the target mode width
  double n_max = 0.0;
  int grid_points = 41;
  double log_tolerance = 1e-5;
};

struct LoOptimum {
  double n_l = 0.0;
  double phase = 0.0;
  double variance = 1.0;
  double overlap = 0.0;  // |d_k|^2 for the target order
};

LoOptimum optimize_gh_lo(const SupermodeBasis& basis, int k, double r, double w,
                         const LoSearchOptions& options = {});

// Supermodes whose better quadrature lies below bound_db.
int count_squeezed(const SupermodeBasis& basis, double r, double w, double bound_db);
// Supermodes whose better quadrature lies in (lower_db, upper_db].
int count_in_band(const SupermodeBasis& basis, double r, double w, double lower_db, double upper_db);

struct ModeVariance {
  int k = 0;
  double lam_ratio = 0.0;
  double v_minus = 1.0;
  double v_plus = 1.0;
  double v_minus_db = 0.0;
};

struct LoResult {
  std::string descriptor;
  double variance = 1.0;
  double residual_weight = 0.0;
};

struct SqueezingReport {
  double pump_ratio = 0.0;
  double noise_frequency = 0.0;
  std::vector<ModeVariance> per_mode;
  std::vector<std::pair<double, int>> counts;  // (bound dB, modes below it)
  std::vector<LoResult> lo_results;
};

SqueezingReport squeezing_report(const SupermodeBasis& basis, double r, double w,
                                 const std::vector<double>& bounds_db, int mode_limit,
                                 const std::vector<LocalOscillator>& los = {});

}  // namespace supermode
