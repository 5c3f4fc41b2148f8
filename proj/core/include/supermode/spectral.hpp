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
#include <optional>
#include <vector>

#include "supermode/coupling.hpp"
#include "supermode/dispersion.hpp"

namespace supermode {

struct DiagonalizeOptions {
  double epsilon = 1e-3;               // significance cut, relative to |Lambda_0|
  int max_vectors = 0;                 // cap on retained eigenvectors, 0 = all significant
  bool compute_vectors = true;
  double residual_tolerance = 1e-10;   // relative to the spectral norm
};

class SupermodeBasis;

// Supermode evaluated on the physical comb grid.
class PhysicalMode {
 public:
  double operator()(double m) const;
  double norm_factor() const { return scale_; }

 private:
  friend class SupermodeBasis;
  PhysicalMode(const SupermodeBasis& basis, int k);
  double raw(double m) const;

  const SupermodeBasis* basis_;
  int k_;
  double scale_ = 1.0;
};

class SupermodeBasis {
 public:
  SupermodeBasis(ModeGrid grid, std::vector<double> eigenvalues, Eigen::MatrixXd eigenvectors,
                 std::vector<double> spectrum, double epsilon, double max_residual);

  const ModeGrid& grid() const { return grid_; }
  double kappa() const { return grid_.kappa; }
  // Retained eigenvalues (physical, sorted by descending |Lambda|).
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  // Column k holds L'_k on the scaled grid, index m + M.
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  // Every eigenvalue of the matrix, physical, sorted by descending |Lambda|.
  const std::vector<double>& spectrum() const { return spectrum_; }
  int size() const { return static_cast<int>(eigenvalues_.size()); }
  bool has_vectors() const { return eigenvectors_.cols() > 0; }
  int n_significant() const { return n_significant_; }
  double epsilon() const { return epsilon_; }
  double lambda0() const { return spectrum_.empty() ? 0.0 : spectrum_.front(); }
  bool leading_negative() const { return lambda0() < 0.0; }
  double max_residual() const { return max_residual_; }

  double scaled_amplitude(int k, int m) const {
    return eigenvectors_(m + grid_.half_width, k);
  }
  PhysicalMode physical_mode(int k) const { return PhysicalMode(*this, k); }
  int node_count(int k) const;

  // Largest squared weight of retained modes with |Lambda_k| >= min_ratio*|Lambda_0|
  // carried by the outer `fraction` of the grid. Small values mean the grid resolves them.
  double edge_weight(double fraction = 0.1, double min_ratio = 0.25) const;

 private:
  ModeGrid grid_;
  std::vector<double> eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  std::vector<double> spectrum_;
  int n_significant_ = 0;
  double epsilon_;
  double max_residual_;
};

SupermodeBasis diagonalize(const CouplingMatrix& matrix, const DiagonalizeOptions& options = {});

struct AnalyticEigensystem {
  double lambda0 = 0.0;
  double ratio = 0.0;     // rho
  double n_signal = 0.0;  // N_s
  double tau_s = 0.0;     // s
  bool valid = false;     // Gaussian-regime conditions both hold

  double eigenvalue(int k) const;
};

AnalyticEigensystem analytic_eigensystem(const CrystalDispersion& crystal, const SpopoConfig& config);

// Normalized Hermite-Gauss amplitude of order k and width n_s at index m.
double hermite_gauss_mode(int k, double m, double n_s);

struct BasisComparison {
  int k = 0;
  double overlap = 0.0;
  double lambda_numeric = 0.0;
  double lambda_analytic = 0.0;
  double relative_error = 0.0;  // |analytic - numeric| / |numeric|
};

std::vector<BasisComparison> compare_bases(const SupermodeBasis& numeric, const AnalyticEigensystem& analytic,
                                           int k_max);

// |<L_ka, L_kb>| for two bases on the same grid.
double mode_overlap(const SupermodeBasis& a, int ka, const SupermodeBasis& b, int kb);

std::vector<double> cavity_length_rescale(const SupermodeBasis& basis, double ratio);

struct SolveOptions {
  std::optional<double> kappa;      // default: chosen from the validity regime
  std::optional<int> half_width;    // default: default_grid, grown until edge weight is small
  DiagonalizeOptions diagonalize;
  int max_half_width = 2500;
  double edge_tolerance = 1e-4;
  double growth = 1.25;
};

// Builds the exact coupling matrix on a suitable grid and diagonalizes it.
SupermodeBasis solve_supermodes(const CrystalDispersion& crystal, const SpopoConfig& config,
                                const SolveOptions& options = {});

}  // namespace supermode
