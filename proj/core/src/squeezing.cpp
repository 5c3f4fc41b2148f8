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

#include "supermode/squeezing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "supermode/errors.hpp"

namespace supermode {

namespace {

using cplx = std::complex<double>;

void check_ratio(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidParameter("pump ratio must lie in [0, 1]");
}

// Numerator and denominator real parts of the transfer for one quadrature.
std::pair<double, double> transfer_parts(double lam_ratio, double r, Quadrature sign) {
  const double g = sign == Quadrature::plus ? r * lam_ratio : -r * lam_ratio;
  return {1.0 + g, 1.0 - g};
}

double best_variance(double lam_ratio, double r, double w) {
  return quadrature_variance(lam_ratio, r, w, lam_ratio >= 0.0 ? Quadrature::minus : Quadrature::plus);
}

double signed_ratio(const SupermodeBasis& basis, double lambda) { return lambda / std::abs(basis.lambda0()); }

std::string format_descriptor(int k, double n_l, double phase) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "GH k=%d, N_L=%.6g, phase=%.6g", k, n_l, phase);
  return buf;
}

}  // namespace

std::complex<double> quadrature_transfer(double lam_ratio, double r, double w, Quadrature sign) {
  check_ratio(r);
  const auto [a, b] = transfer_parts(lam_ratio, r, sign);
  const cplx den(b, w);
  if (std::abs(den) < 1e-12) throw ThresholdSingularity();
  return cplx(a, -w) / den;
}

double quadrature_variance(double lam_ratio, double r, double w, Quadrature sign) {
  check_ratio(r);
  const auto [a, b] = transfer_parts(lam_ratio, r, sign);
  const double den = b * b + w * w;
  if (std::sqrt(den) < 1e-12) throw ThresholdSingularity();
  return (a * a + w * w) / den;
}

double min_variance(double lam_k, double lam_0) {
  if (!(lam_0 > 0.0)) throw InvalidParameter("min_variance needs a positive leading eigenvalue");
  const double q = (lam_0 - std::abs(lam_k)) / (lam_0 + std::abs(lam_k));
  return q * q;
}

ModeWindow basis_window(const SupermodeBasis& basis) { return {basis.grid().half_width, basis.kappa()}; }

LocalOscillator::LocalOscillator(ModeWindow window, std::vector<std::complex<double>> amplitudes,
                                 std::string descriptor)
    : window_(window), amplitudes_(std::move(amplitudes)), descriptor_(std::move(descriptor)) {
  if (amplitudes_.size() != static_cast<std::size_t>(2 * window_.half_width + 1)) {
    throw InvalidParameter("local oscillator size does not match its window");
  }
  if (std::abs(normalization() - 1.0) > 1e-8) throw InvalidParameter("local oscillator is not normalized");
}

double LocalOscillator::normalization() const {
  double s = 0.0;
  for (const auto& e : amplitudes_) s += std::norm(e);
  return s;
}

LocalOscillator gauss_hermite_lo(int k, double n_l, double phase, const ModeWindow& window) {
  if (k < 0 || !(n_l > 0.0)) throw InvalidParameter("Hermite-Gauss LO needs k >= 0 and a positive width");
  std::vector<cplx> e(static_cast<std::size_t>(2 * window.half_width + 1));
  double s = 0.0;
  for (int j = -window.half_width; j <= window.half_width; ++j) {
    const double v = hermite_gauss_mode(k, j * window.stride, n_l);
    e[static_cast<std::size_t>(j + window.half_width)] = v;
    s += v * v;
  }
  if (!(s > 0.0)) throw InvalidParameter("Hermite-Gauss LO vanishes on the window");
  const cplx rot = std::polar(1.0 / std::sqrt(s), phase);
  for (auto& x : e) x *= rot;
  return LocalOscillator(window, std::move(e), format_descriptor(k, n_l, phase));
}

LocalOscillator supermode_lo(const SupermodeBasis& basis, int k, double phase) {
  if (k < 0 || k >= basis.size() || !basis.has_vectors()) throw InvalidParameter("supermode index out of range");
  const auto& v = basis.eigenvectors();
  const cplx rot = std::polar(1.0, phase);
  std::vector<cplx> e(static_cast<std::size_t>(v.rows()));
  for (Eigen::Index i = 0; i < v.rows(); ++i) e[static_cast<std::size_t>(i)] = rot * v(i, k);
  char buf[64];
  std::snprintf(buf, sizeof buf, "supermode k=%d, phase=%.6g", k, phase);
  return LocalOscillator(basis_window(basis), std::move(e), buf);
}

std::vector<std::complex<double>> lo_projections(const SupermodeBasis& basis, const LocalOscillator& lo) {
  if (!basis.has_vectors()) throw InvalidParameter("basis was computed without eigenvectors");
  const auto& v = basis.eigenvectors();
  const auto& e = lo.amplitudes();
  std::vector<cplx> d(static_cast<std::size_t>(basis.size()));

  if (lo.window() == basis_window(basis)) {
    Eigen::VectorXd re(v.rows()), im(v.rows());
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      re(i) = e[static_cast<std::size_t>(i)].real();
      im(i) = e[static_cast<std::size_t>(i)].imag();
    }
    const Eigen::VectorXd dr = v.transpose() * re;
    const Eigen::VectorXd di = v.transpose() * im;
    for (int k = 0; k < basis.size(); ++k) d[static_cast<std::size_t>(k)] = cplx(dr(k), di(k));
    return d;
  }

  const double reach = basis.kappa() * basis.grid().half_width;
  if (lo.window().stride != 1.0 || lo.window().half_width > reach) {
    throw WindowMismatch("local oscillator window is neither the basis window nor inside the physical grid");
  }
  const int h = lo.window().half_width;
  for (int k = 0; k < basis.size(); ++k) {
    const auto mode = basis.physical_mode(k);
    cplx acc = 0.0;
    for (int m = -h; m <= h; ++m) acc += mode(m) * e[static_cast<std::size_t>(m + h)];
    d[static_cast<std::size_t>(k)] = acc;
  }
  return d;
}

HomodyneResult homodyne_spectrum(const SupermodeBasis& basis, const LocalOscillator& lo, double r, double w) {
  const auto d = lo_projections(basis, lo);
  cplx total = 0.0;
  double weight = 0.0;
  for (int k = 0; k < basis.size(); ++k) {
    const double x = signed_ratio(basis, basis.eigenvalues()[static_cast<std::size_t>(k)]);
    const double re = d[static_cast<std::size_t>(k)].real();
    const double im = d[static_cast<std::size_t>(k)].imag();
    weight += re * re + im * im;
    const cplx vp = quadrature_transfer(x, r, w, Quadrature::plus);
    const cplx vpm = quadrature_transfer(x, r, -w, Quadrature::plus);
    const cplx vm = quadrature_transfer(x, r, w, Quadrature::minus);
    const cplx vmm = quadrature_transfer(x, r, -w, Quadrature::minus);
    total += re * re * vp * vpm + im * im * vm * vmm + cplx(0.0, 1.0) * re * im * (vp * vmm - vm * vpm);
  }
  if (std::abs(total.imag()) > 1e-10 * std::max(1.0, std::abs(total.real()))) {
    throw ConvergenceFailure("homodyne spectrum has a non-real residue");
  }
  HomodyneResult out;
  out.residual_weight = std::max(0.0, lo.normalization() - weight);
  out.incomplete = out.residual_weight > 1e-6;
  out.variance = total.real() + out.residual_weight;
  return out;
}

const char* to_string(LoObjective o) {
  return o == LoObjective::minimum_variance ? "minimum-variance" : "maximum-overlap";
}

LoOptimum optimize_gh_lo(const SupermodeBasis& basis, int k, double r, double w, const LoSearchOptions& options) {
  if (k < 0 || k >= basis.size() || !basis.has_vectors()) throw InvalidParameter("supermode index out of range");
  const auto& v = basis.eigenvectors();
  const int M = basis.grid().half_width;
  const ModeWindow window = basis_window(basis);

  std::vector<double> v_plus(static_cast<std::size_t>(basis.size()));
  std::vector<double> v_minus(v_plus.size());
  for (int j = 0; j < basis.size(); ++j) {
    const double x = signed_ratio(basis, basis.eigenvalues()[static_cast<std::size_t>(j)]);
    v_plus[static_cast<std::size_t>(j)] = quadrature_variance(x, r, w, Quadrature::plus);
    v_minus[static_cast<std::size_t>(j)] = quadrature_variance(x, r, w, Quadrature::minus);
  }

  struct Eval {
    double vp, vm, overlap;
  };
  // A real LO gives real projections; phase pi/2 swaps which quadrature each d_k reads.
  auto evaluate = [&](double n_l) {
    Eigen::VectorXd e(v.rows());
    for (int m = -M; m <= M; ++m) e(m + M) = hermite_gauss_mode(k, m * window.stride, n_l);
    e /= e.norm();
    const Eigen::VectorXd d = v.transpose() * e;
    const double residual = std::max(0.0, 1.0 - d.squaredNorm());
    Eval out{residual, residual, d(k) * d(k)};
    for (int j = 0; j < basis.size(); ++j) {
      out.vp += d(j) * d(j) * v_plus[static_cast<std::size_t>(j)];
      out.vm += d(j) * d(j) * v_minus[static_cast<std::size_t>(j)];
    }
    return out;
  };
  auto cost = [&](double log_n) {
    const Eval e = evaluate(std::exp(log_n));
    return options.objective == LoObjective::minimum_variance ? std::min(e.vp, e.vm) : -e.overlap;
  };

  double lo = options.n_min, hi = options.n_max;
  if (!(lo > 0.0) || !(hi > lo)) {
    double second = 0.0;
    for (int m = -M; m <= M; ++m) second += static_cast<double>(m) * m * v(m + M, k) * v(m + M, k);
    const double width = basis.kappa() * std::sqrt(second / (k + 0.5));
    lo = width / 4.0;
    hi = width * 4.0;
  }
  const int points = std::max(options.grid_points, 3);
  const double a = std::log(lo), b = std::log(hi);
  int best = 0;
  double best_cost = INFINITY;
  for (int i = 0; i < points; ++i) {
    const double c = cost(a + (b - a) * i / (points - 1));
    if (c < best_cost) {
      best_cost = c;
      best = i;
    }
  }
  double left = a + (b - a) * std::max(best - 1, 0) / (points - 1);
  double right = a + (b - a) * std::min(best + 1, points - 1) / (points - 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - inv_phi * (right - left);
  double x2 = left + inv_phi * (right - left);
  double f1 = cost(x1), f2 = cost(x2);
  while (right - left > options.log_tolerance) {
    if (f1 < f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - inv_phi * (right - left);
      f1 = cost(x1);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + inv_phi * (right - left);
      f2 = cost(x2);
    }
  }

  LoOptimum out;
  out.n_l = std::exp(0.5 * (left + right));
  const Eval e = evaluate(out.n_l);
  out.overlap = e.overlap;
  if (e.vm < e.vp) {
    out.phase = std::numbers::pi / 2.0;
    out.variance = e.vm;
  } else {
    out.phase = 0.0;
    out.variance = e.vp;
  }
  return out;
}

int count_squeezed(const SupermodeBasis& basis, double r, double w, double bound_db) {
  if (!(bound_db < 0.0)) throw InvalidParameter("squeezing bound must be negative dB");
  int n = 0;
  for (double lambda : basis.spectrum()) {
    if (to_db(best_variance(signed_ratio(basis, lambda), r, w)) < bound_db) ++n;
  }
  return n;
}

int count_in_band(const SupermodeBasis& basis, double r, double w, double lower_db, double upper_db) {
  int n = 0;
  for (double lambda : basis.spectrum()) {
    const double db = to_db(best_variance(signed_ratio(basis, lambda), r, w));
    if (db > lower_db && db <= upper_db) ++n;
  }
  return n;
}

SqueezingReport squeezing_report(const SupermodeBasis& basis, double r, double w,
                                 const std::vector<double>& bounds_db, int mode_limit,
                                 const std::vector<LocalOscillator>& los) {
  SqueezingReport rep;
  rep.pump_ratio = r;
  rep.noise_frequency = w;
  const int top = std::min<int>(mode_limit, static_cast<int>(basis.spectrum().size()));
  for (int k = 0; k < top; ++k) {
    ModeVariance mv;
    mv.k = k;
    mv.lam_ratio = signed_ratio(basis, basis.spectrum()[static_cast<std::size_t>(k)]);
    mv.v_minus = quadrature_variance(mv.lam_ratio, r, w, Quadrature::minus);
    mv.v_plus = quadrature_variance(mv.lam_ratio, r, w, Quadrature::plus);
    mv.v_minus_db = to_db(mv.v_minus);
    rep.per_mode.push_back(mv);
  }
  for (double bound : bounds_db) rep.counts.emplace_back(bound, count_squeezed(basis, r, w, bound));
  for (const auto& lo : los) {
    const auto h = homodyne_spectrum(basis, lo, r, w);
    rep.lo_results.push_back({lo.descriptor(), h.variance, h.residual_weight});
  }
  return rep;
}

}  // namespace supermode
