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

#include "supermode/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "lapack_eigen.hpp"
#include "supermode/errors.hpp"

namespace supermode {

namespace {

int count_sign_changes(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double cut = 1e-4 * v.cwiseAbs().maxCoeff();
  int changes = 0;
  int last = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) <= cut) continue;
    const int s = v(i) > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Descending |lambda|; near-ties broken by node count.
std::vector<int> supermode_order(const std::vector<double>& values, const Eigen::MatrixXd* vectors) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(values[a]) > std::abs(values[b]); });
  if (vectors == nullptr || order.empty()) return order;
  const double tie = 1e-12 * std::abs(values[order.front()]);
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() &&
           std::abs(values[order[start]]) - std::abs(values[order[end]]) <= tie) {
      ++end;
    }
    if (end - start > 1) {
      std::stable_sort(order.begin() + start, order.begin() + end, [&](int a, int b) {
        return count_sign_changes(vectors->col(a)) < count_sign_changes(vectors->col(b));
      });
    }
    start = end;
  }
  return order;
}

}  // namespace

SupermodeBasis::SupermodeBasis(ModeGrid grid, std::vector<double> eigenvalues, Eigen::MatrixXd eigenvectors,
                               std::vector<double> spectrum, double epsilon, double max_residual)
    : grid_(grid),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      spectrum_(std::move(spectrum)),
      epsilon_(epsilon),
      max_residual_(max_residual) {
  if (eigenvectors_.cols() > 0 &&
      (eigenvectors_.cols() != static_cast<Eigen::Index>(eigenvalues_.size()) ||
       eigenvectors_.rows() != grid_.size())) {
    throw InvalidParameter("supermode basis shape does not match its grid");
  }
  const double cut = epsilon_ * std::abs(lambda0());
  n_significant_ = static_cast<int>(
      std::count_if(spectrum_.begin(), spectrum_.end(), [cut](double x) { return std::abs(x) > cut; }));
}

int SupermodeBasis::node_count(int k) const { return count_sign_changes(eigenvectors_.col(k)); }

double SupermodeBasis::edge_weight(double fraction, double min_ratio) const {
  const int M = grid_.half_width;
  const double inner = (1.0 - fraction) * M;
  const double cut = min_ratio * std::abs(lambda0());
  double worst = 0.0;
  for (int k = 0; k < eigenvectors_.cols(); ++k) {
    if (std::abs(eigenvalues_[static_cast<std::size_t>(k)]) < cut) continue;
    double w = 0.0;
    for (int m = -M; m <= M; ++m) {
      if (std::abs(m) > inner) {
        const double v = eigenvectors_(m + M, k);
        w += v * v;
      }
    }
    worst = std::max(worst, w);
  }
  return worst;
}

PhysicalMode::PhysicalMode(const SupermodeBasis& basis, int k) : basis_(&basis), k_(k) {
  const double reach = basis.kappa() * basis.grid().half_width;
  const auto last = static_cast<long>(std::floor(reach));
  double sum = 0.0;
  for (long m = -last; m <= last; ++m) {
    const double v = raw(static_cast<double>(m));
    sum += v * v;
  }
  scale_ = sum > 0.0 ? 1.0 / std::sqrt(sum) : 0.0;
}

double PhysicalMode::raw(double m) const {
  const auto& v = basis_->eigenvectors();
  const int n = static_cast<int>(v.rows());
  const double u = m / basis_->kappa() + basis_->grid().half_width;
  if (u < 0.0 || u > n - 1) return 0.0;
  const int i = std::min(static_cast<int>(std::floor(u)), n - 2);
  const double t = u - i;
  auto at = [&](int j) { return (j < 0 || j >= n) ? 0.0 : v(j, k_); };
  const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  // Catmull-Rom cubic.
  return 0.5 * (2.0 * p1 + (p2 - p0) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t +
                (3.0 * p1 - p0 - 3.0 * p2 + p3) * t * t * t);
}

double PhysicalMode::operator()(double m) const { return scale_ * raw(m); }

SupermodeBasis diagonalize(const CouplingMatrix& matrix, const DiagonalizeOptions& options) {
  const auto& grid = matrix.grid();
  const double root_kappa = std::sqrt(grid.kappa);
  const Eigen::MatrixXd& L = matrix.entries();

  if (!options.compute_vectors) {
    auto all = detail::symmetric_eigenvalues(L);
    for (auto& x : all) x *= root_kappa;
    const auto order = supermode_order(all, nullptr);
    std::vector<double> spectrum;
    spectrum.reserve(all.size());
    for (int i : order) spectrum.push_back(all[static_cast<std::size_t>(i)]);
    const double cut = options.epsilon * std::abs(spectrum.front());
    std::vector<double> kept;
    for (double x : spectrum) {
      if (std::abs(x) > cut) kept.push_back(x);
    }
    return SupermodeBasis(grid, std::move(kept), Eigen::MatrixXd(), std::move(spectrum), options.epsilon, 0.0);
  }

  const auto select = [&](const std::vector<double>& w) {
    const int n = static_cast<int>(w.size());
    const double cut = options.epsilon * std::max(std::abs(w.front()), std::abs(w.back()));
    int lo = 0, hi = 0;
    while (lo < n && w[static_cast<std::size_t>(lo)] < -cut) ++lo;
    while (hi < n - lo && w[static_cast<std::size_t>(n - 1 - hi)] > cut) ++hi;
    if (options.max_vectors > 0 && lo + hi > options.max_vectors) {
      int a = 0, b = 0;
      while (a + b < options.max_vectors) {
        const double left = a < lo ? -w[static_cast<std::size_t>(a)] : -1.0;
        const double right = b < hi ? w[static_cast<std::size_t>(n - 1 - b)] : -1.0;
        if (left > right) ++a; else ++b;
      }
      lo = a;
      hi = b;
    }
    return std::make_pair(lo, hi);
  };
  auto eig = detail::symmetric_eigen(L, select);

  const double norm = std::max(std::abs(eig.all_values.front()), std::abs(eig.all_values.back()));
  double residual = 0.0;
  if (!eig.values.empty()) {
    const Eigen::Map<const Eigen::VectorXd> w(eig.values.data(), static_cast<Eigen::Index>(eig.values.size()));
    const Eigen::MatrixXd r = L * eig.vectors - eig.vectors * w.asDiagonal();
    residual = r.colwise().norm().maxCoeff() / (norm > 0.0 ? norm : 1.0);
  }
  if (residual > options.residual_tolerance) {
    throw ConvergenceFailure("eigen-residual " + std::to_string(residual) + " exceeds tolerance");
  }

  const auto order = supermode_order(eig.values, &eig.vectors);
  const int kept = static_cast<int>(order.size());
  std::vector<double> values(static_cast<std::size_t>(kept));
  Eigen::MatrixXd vectors(L.rows(), kept);
  for (int k = 0; k < kept; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    values[static_cast<std::size_t>(k)] = root_kappa * eig.values[static_cast<std::size_t>(src)];
    Eigen::VectorXd v = eig.vectors.col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    vectors.col(k) = v;
  }

  std::vector<double> all = eig.all_values;
  for (auto& x : all) x *= root_kappa;
  const auto all_order = supermode_order(all, nullptr);
  std::vector<double> spectrum;
  spectrum.reserve(all.size());
  for (int i : all_order) spectrum.push_back(all[static_cast<std::size_t>(i)]);
  return SupermodeBasis(grid, std::move(values), std::move(vectors), std::move(spectrum), options.epsilon,
                        residual);
}

double AnalyticEigensystem::eigenvalue(int k) const { return lambda0 * std::pow(ratio, k); }

AnalyticEigensystem analytic_eigensystem(const CrystalDispersion& crystal, const SpopoConfig& config) {
  const auto t = characteristic_times(crystal);
  const double tp = config.pump_pulse_duration;
  const double root = std::sqrt(t.tau1 * t.tau1 + tp * tp);
  AnalyticEigensystem a;
  a.lambda0 = std::pow(std::numbers::pi, 0.25) * std::sqrt(2.0 * config.pump_count()) * tp / root;
  a.ratio = -1.0 + 2.0 * t.tau2 / root;
  a.tau_s = std::sqrt(2.0 * t.tau2 * root);
  a.n_signal = 1.0 / (config.free_spectral_range * a.tau_s);
  a.valid = gaussian_validity(crystal, config).regime == Regime::gaussian;
  return a;
}

double hermite_gauss_mode(int k, double m, double n_s) {
  const double x = m / n_s;
  // Recurrence on normalized Hermite functions psi_k(x).
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  for (int j = 0; j < k; ++j) {
    const double next = std::sqrt(2.0 / (j + 1)) * x * cur - std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur / std::sqrt(n_s);
}

std::vector<BasisComparison> compare_bases(const SupermodeBasis& numeric, const AnalyticEigensystem& analytic,
                                           int k_max) {
  std::vector<BasisComparison> out;
  const int M = numeric.grid().half_width;
  const double width = analytic.n_signal / numeric.kappa();
  const int top = std::min(k_max, numeric.size());
  for (int k = 0; k < top; ++k) {
    Eigen::VectorXd hg(numeric.grid().size());
    for (int m = -M; m <= M; ++m) hg(m + M) = hermite_gauss_mode(k, m, width);
    const double n = hg.norm();
    BasisComparison c;
    c.k = k;
    c.overlap = n > 0.0 ? std::abs(hg.dot(numeric.eigenvectors().col(k))) / n : 0.0;
    c.lambda_numeric = numeric.eigenvalues()[static_cast<std::size_t>(k)];
    c.lambda_analytic = analytic.eigenvalue(k);
    c.relative_error = std::abs(c.lambda_analytic - c.lambda_numeric) / std::abs(c.lambda_numeric);
    out.push_back(c);
  }
  return out;
}

double mode_overlap(const SupermodeBasis& a, int ka, const SupermodeBasis& b, int kb) {
  if (!(a.grid() == b.grid())) throw WindowMismatch("bases live on different grids");
  return std::abs(a.eigenvectors().col(ka).dot(b.eigenvectors().col(kb)));
}

std::vector<double> cavity_length_rescale(const SupermodeBasis& basis, double ratio) {
  if (!(ratio > 0.0)) throw InvalidParameter("cavity length ratio must be positive");
  std::vector<double> out = basis.eigenvalues();
  const double s = std::sqrt(ratio);
  for (auto& x : out) x *= s;
  return out;
}

SupermodeBasis solve_supermodes(const CrystalDispersion& crystal, const SpopoConfig& config,
                                const SolveOptions& options) {
  crystal.validate();
  config.validate();
  const double kappa = options.kappa.value_or(default_kappa(gaussian_validity(crystal, config).regime));
  ModeGrid grid = default_grid(crystal, config, kappa);
  if (options.half_width) {
    grid.half_width = *options.half_width;
    return diagonalize(build_coupling_matrix(crystal, config, grid), options.diagonalize);
  }
  grid.half_width = std::min(grid.half_width, options.max_half_width);
  for (;;) {
    SupermodeBasis basis = diagonalize(build_coupling_matrix(crystal, config, grid), options.diagonalize);
    if (!options.diagonalize.compute_vectors || grid.half_width >= options.max_half_width ||
        basis.edge_weight() <= options.edge_tolerance) {
      return basis;
    }
    grid.half_width = std::min(options.max_half_width, static_cast<int>(std::ceil(grid.half_width * options.growth)));
  }
}

}  // namespace supermode
