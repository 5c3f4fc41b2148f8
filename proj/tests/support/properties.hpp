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
#include <algorithm>
#include <cmath>
#include <random>

#include "cases.hpp"
#include "supermode/coupling.hpp"
#include "supermode/spectral.hpp"
#include "supermode/squeezing.hpp"
#include "supermode/threshold.hpp"

namespace supermode::fixtures {

// Worst deviations of one random configuration from the structural invariants.
struct PropertyErrors {
  double asymmetry = 0.0;        // max |L - L^T|
  double orthonormality = 0.0;   // max |V^T V - I|
  double sum_rule = 0.0;         // |sum Lambda^2 - kappa ||L'||_F^2| / kappa ||L'||_F^2
  double uncertainty = 0.0;      // max |V+ V- - 1|
  double kappa_invariance = 0.0; // |Lambda_0(2 kappa) / Lambda_0(kappa) - 1|
  double rescale = 0.0;          // rebuilt at Omega/2 vs sqrt(2) law
  double threshold_rate = 0.0;   // |min rate + 2 gamma_s| at r = 1
};

inline PropertyErrors check_properties(const SmallCase& c, std::mt19937_64& rng) {
  PropertyErrors e;
  const double omega = c.spopo.free_spectral_range;
  const CouplingMatrix L = build_coupling_matrix(c.crystal, c.spopo, {c.kappa, c.half_width, omega});
  e.asymmetry = (L.entries() - L.entries().transpose()).cwiseAbs().maxCoeff();

  DiagonalizeOptions all;
  all.epsilon = 1e-6;
  const SupermodeBasis b = diagonalize(L, all);
  const Eigen::MatrixXd& v = b.eigenvectors();
  e.orthonormality =
      (v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();

  double spectral = 0.0;
  for (double x : b.spectrum()) spectral += x * x;
  const double frobenius = c.kappa * L.entries().squaredNorm();
  e.sum_rule = std::abs(spectral - frobenius) / frobenius;

  std::uniform_real_distribution<double> ur(0.0, 0.999), uw(0.0, 5.0);
  const double r = ur(rng), w = uw(rng);
  for (double lam : b.eigenvalues()) {
    const double x = lam / std::abs(b.lambda0());
    const double p = quadrature_variance(x, r, w, Quadrature::plus) * quadrature_variance(x, r, w, Quadrature::minus);
    e.uncertainty = std::max(e.uncertainty, std::abs(p - 1.0));
  }

  DiagonalizeOptions values_only;
  values_only.compute_vectors = false;
  const auto coarse = diagonalize(
      build_coupling_matrix(c.crystal, c.spopo, {2.0 * c.kappa, c.half_width / 2, omega}), values_only);
  e.kappa_invariance = std::abs(coarse.lambda0() / b.lambda0() - 1.0);

  auto longer = c.spopo;
  longer.free_spectral_range = omega / 2.0;
  const auto rebuilt = diagonalize(
      build_coupling_matrix(c.crystal, longer, {2.0 * c.kappa, c.half_width, longer.free_spectral_range}),
      values_only);
  e.rescale = std::abs(rebuilt.lambda0() / cavity_length_rescale(b, 2.0).front() - 1.0);

  const double gamma = cavity_linewidth(c.spopo);
  double lowest = 0.0;
  for (const auto& p : rate_eigenvalues(b, 1.0, gamma)) lowest = std::min({lowest, p.plus, p.minus});
  e.threshold_rate = std::abs(lowest + 2.0 * gamma);
  return e;
}

// Limits the suite is held to.
struct PropertyLimits {
  static constexpr double asymmetry = 0.0;
  static constexpr double orthonormality = 1e-10;
  static constexpr double sum_rule = 1e-8;
  static constexpr double uncertainty = 1e-10;
  static constexpr double kappa_invariance = 1e-3;
  static constexpr double rescale = 1e-3;
  static constexpr double threshold_rate = 0.0;
};

inline bool within_limits(const PropertyErrors& e) {
  using P = PropertyLimits;
  return e.asymmetry <= P::asymmetry && e.orthonormality <= P::orthonormality && e.sum_rule <= P::sum_rule &&
         e.uncertainty <= P::uncertainty && e.kappa_invariance <= P::kappa_invariance && e.rescale <= P::rescale &&
         e.threshold_rate <= P::threshold_rate;
}

}  // namespace supermode::fixtures
