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

#include "supermode/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "supermode/errors.hpp"

namespace supermode {

namespace {

const double inv_pi_quarter = std::pow(std::numbers::pi, -0.25);

double walkoff_width(const DispersionCoefficients& b) {
  return b.beta1 != 0.0 ? std::sqrt(2.5) / std::abs(b.beta1) : 0.0;
}

}  // namespace

void ModeGrid::validate() const {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw InvalidParameter("kappa must be >= 1");
  if (half_width < 8) throw InvalidParameter("grid half-width must be >= 8");
  if (!(omega > 0.0)) throw InvalidParameter("grid omega must be positive");
}

PumpSpectrum PumpSpectrum::gaussian(double n_p) {
  if (!(n_p > 0.0)) throw InvalidParameter("pump mode count must be positive");
  PumpSpectrum p;
  p.n_p_ = n_p;
  p.width_ = n_p;
  return p;
}

PumpSpectrum PumpSpectrum::sampled(std::vector<double> amplitudes, int center, double step) {
  if (amplitudes.size() < 2 || !(step > 0.0)) throw InvalidParameter("sampled pump needs >= 2 samples");
  PumpSpectrum p;
  p.samples_ = std::move(amplitudes);
  p.center_ = center;
  p.step_ = step;
  double w = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < p.samples_.size(); ++i) {
    const double s = (static_cast<double>(i) - center) * step;
    w += p.samples_[i] * p.samples_[i];
    s2 += s * s * p.samples_[i] * p.samples_[i];
  }
  if (!(w > 0.0)) throw InvalidParameter("sampled pump is identically zero");
  // For a Gaussian amplitude <s^2> = N_p^2 / 2.
  p.width_ = std::sqrt(2.0 * s2 / w);
  return p;
}

double PumpSpectrum::amplitude(double s) const {
  if (samples_.empty()) {
    const double x = s / n_p_;
    return inv_pi_quarter / std::sqrt(n_p_) * std::exp(-0.5 * x * x);
  }
  const double u = s / step_ + center_;
  if (u < 0.0 || u > static_cast<double>(samples_.size() - 1)) return 0.0;
  const auto i = std::min(static_cast<std::size_t>(u), samples_.size() - 2);
  const double t = u - static_cast<double>(i);
  return (1.0 - t) * samples_[i] + t * samples_[i + 1];
}

double PumpSpectrum::scaled_amplitude(double s, double kappa) const {
  return std::sqrt(kappa) * amplitude(kappa * s);
}

double phase_mismatch_angle(double beta1, double beta2p, double beta2s, double m, double q) {
  const double s = m + q;
  return beta1 * s + beta2p * s * s - beta2s * (m * m + q * q);
}

double sinc_factor(double phi) {
  if (std::abs(phi) < 1e-4) {
    const double p2 = phi * phi;
    return 1.0 - p2 / 6.0 + p2 * p2 / 120.0;
  }
  return std::sin(phi) / phi;
}

double pump_spectrum(double n_p, double m, double kappa) {
  const double np = n_p / kappa;
  const double x = m / np;
  return inv_pi_quarter / std::sqrt(np) * std::exp(-0.5 * x * x);
}

CouplingMatrix::CouplingMatrix(ModeGrid grid, Eigen::MatrixXd entries, double pump_norm_check)
    : grid_(grid), entries_(std::move(entries)), pump_norm_check_(pump_norm_check) {
  if (entries_.rows() != grid_.size() || entries_.cols() != grid_.size()) {
    throw InvalidParameter("coupling matrix size does not match its grid");
  }
  if (!entries_.allFinite()) throw InvalidParameter("coupling matrix has non-finite entries");
  for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < entries_.rows(); ++i) {
      if (entries_(i, j) != entries_(j, i)) throw InvalidParameter("coupling matrix is not symmetric");
    }
  }
}

double required_half_width(const CrystalDispersion& crystal, const SpopoConfig& config, double kappa,
                           double pump_width) {
  const auto b = beta_coefficients(crystal, config.free_spectral_range);
  return 5.0 * std::max(pump_width, walkoff_width(b)) / kappa;
}

double default_kappa(Regime regime) { return regime == Regime::non_gaussian ? 200.0 : 1000.0; }

ModeGrid default_grid(const CrystalDispersion& crystal, const SpopoConfig& config, double kappa) {
  const auto b = beta_coefficients(crystal, config.free_spectral_range).scaled(kappa);
  const double np = config.pump_count() / kappa;
  const double n1 = walkoff_width(b);
  double m = std::max({64.0, std::ceil(6.0 * np), std::ceil(6.0 * n1)});
  if (b.beta2s != 0.0) {
    // Anti-diagonal reach: |beta1'| s - 2 beta2s' m^2 stays within two sinc lobes for |s| <= 3 N'_p.
    const double reach = (3.0 * std::abs(b.beta1) * np + 2.0 * std::numbers::pi) / (2.0 * std::abs(b.beta2s));
    m = std::max(m, std::ceil(std::sqrt(reach)));
  }
  return {kappa, static_cast<int>(m), config.free_spectral_range};
}

CouplingMatrix build_coupling_matrix(const CrystalDispersion& crystal, const SpopoConfig& config,
                                     const ModeGrid& grid) {
  return build_coupling_matrix(crystal, config, grid, PumpSpectrum::gaussian(config.pump_count()));
}

CouplingMatrix build_coupling_matrix(const CrystalDispersion& crystal, const SpopoConfig& config,
                                     const ModeGrid& grid, const PumpSpectrum& pump) {
  grid.validate();
  const double need = required_half_width(crystal, config, grid.kappa, pump.width());
  if (grid.half_width < need) throw GridTooNarrow(grid.half_width, need);

  const auto b = beta_coefficients(crystal, grid.omega).scaled(grid.kappa);
  const int M = grid.half_width;
  const int n = grid.size();

  // alpha depends only on m + q in [-2M, 2M].
  std::vector<double> alpha(static_cast<std::size_t>(4 * M + 1));
  double norm = 0.0;
  for (int s = -2 * M; s <= 2 * M; ++s) {
    const double a = pump.scaled_amplitude(s, grid.kappa);
    alpha[static_cast<std::size_t>(s + 2 * M)] = a;
    norm += a * a;
  }

  Eigen::MatrixXd L(n, n);
  for (int j = 0; j < n; ++j) {
    const int q = j - M;
    for (int i = j; i < n; ++i) {
      const int m = i - M;
      const double phi = phase_mismatch_angle(b.beta1, b.beta2p, b.beta2s, m, q);
      const double v = sinc_factor(phi) * alpha[static_cast<std::size_t>(m + q + 2 * M)];
      L(i, j) = v;
      L(j, i) = v;
    }
  }
  return CouplingMatrix(grid, std::move(L), norm);
}

CouplingMatrix gaussian_coupling_matrix(const CrystalDispersion& crystal, const SpopoConfig& config,
                                        const ModeGrid& grid) {
  grid.validate();
  const double n_p = config.pump_count();
  const double need = required_half_width(crystal, config, grid.kappa, n_p);
  if (grid.half_width < need) throw GridTooNarrow(grid.half_width, need);

  const auto b = beta_coefficients(crystal, grid.omega).scaled(grid.kappa);
  const double inv_n1 = std::abs(b.beta1) / std::sqrt(2.5);
  const double inv_n2 = std::sqrt(std::abs(b.beta2s)) / (2.0 * std::sqrt(3.0));
  const int M = grid.half_width;
  const int n = grid.size();

  double norm = 0.0;
  for (int s = -2 * M; s <= 2 * M; ++s) {
    const double a = pump_spectrum(n_p, s, grid.kappa);
    norm += a * a;
  }

  Eigen::MatrixXd L(n, n);
  for (int j = 0; j < n; ++j) {
    const int q = j - M;
    for (int i = j; i < n; ++i) {
      const int m = i - M;
      const double u = (m + q) * inv_n1;
      const double w = (m - q) * inv_n2;
      const double v = std::exp(-0.5 * (u * u + w * w)) * pump_spectrum(n_p, m + q, grid.kappa);
      L(i, j) = v;
      L(j, i) = v;
    }
  }
  return CouplingMatrix(grid, std::move(L), norm);
}

}  // namespace supermode
