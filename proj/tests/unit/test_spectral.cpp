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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cases.hpp"
#include "supermode/coupling.hpp"
#include "supermode/errors.hpp"
#include "supermode/spectral.hpp"

using namespace supermode;
using supermode::fixtures::bibo;
using supermode::fixtures::golden_spopo;
using supermode::fixtures::SmallCaseGenerator;

namespace {

// Case A on a coarse grid: same physics, a quarter of the points.
const SupermodeBasis& coarse_case_a() {
  static const SupermodeBasis basis = [] {
    SolveOptions o;
    o.kappa = 4000.0;
    return solve_supermodes(bibo(1e-4), golden_spopo(), o);
  }();
  return basis;
}

}  // namespace

TEST(Diagonalize, DiagonalMatrix) {
  const int M = 8;
  Eigen::VectorXd d(2 * M + 1);
  for (int i = 0; i < d.size(); ++i) d(i) = (i % 2 ? -1.0 : 1.0) * (1.0 + 0.5 * i);
  const CouplingMatrix L({4.0, M, 1.0}, d.asDiagonal().toDenseMatrix());
  DiagonalizeOptions o;
  o.epsilon = 1e-6;
  const auto basis = diagonalize(L, o);
  ASSERT_EQ(basis.size(), d.size());
  // Largest |d| sits at the last index.
  EXPECT_DOUBLE_EQ(basis.eigenvalues()[0], 2.0 * d(2 * M));
  for (int k = 0; k < basis.size(); ++k) {
    const Eigen::VectorXd v = basis.eigenvectors().col(k);
    Eigen::Index arg = 0;
    EXPECT_NEAR(v.cwiseAbs().maxCoeff(&arg), 1.0, 1e-14);
    EXPECT_NEAR(basis.eigenvalues()[k], 2.0 * d(arg), 1e-13);
  }
}

TEST(Diagonalize, SortedByMagnitudeWithPositiveLeadingComponent) {
  const auto& b = coarse_case_a();
  const double tie = 1e-12 * std::abs(b.lambda0());
  for (int k = 1; k < b.size(); ++k) {
    EXPECT_GE(std::abs(b.eigenvalues()[k - 1]) + tie, std::abs(b.eigenvalues()[k]));
  }
  for (int k = 0; k < b.size(); ++k) {
    Eigen::Index arg = 0;
    b.eigenvectors().col(k).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(b.eigenvectors()(arg, k), 0.0);
  }
}

TEST(Diagonalize, OrthonormalWithSmallResidual) {
  const auto& b = coarse_case_a();
  const Eigen::MatrixXd gram = b.eigenvectors().transpose() * b.eigenvectors();
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(b.max_residual(), 1e-10);
}

TEST(Diagonalize, SignificanceCut) {
  const auto& b = coarse_case_a();
  const double cut = 1e-3 * std::abs(b.lambda0());
  int expected = 0;
  for (double x : b.spectrum()) expected += std::abs(x) > cut;
  EXPECT_EQ(b.n_significant(), expected);
  EXPECT_EQ(b.size(), expected);
  EXPECT_GT(expected, 80);
}

TEST(Diagonalize, EigenvaluesOnlyMatchesFullSolve) {
  const auto c = SmallCaseGenerator(4).next();
  const auto L = build_coupling_matrix(c.crystal, c.spopo, {c.kappa, c.half_width, c.spopo.free_spectral_range});
  DiagonalizeOptions fast;
  fast.compute_vectors = false;
  const auto a = diagonalize(L);
  const auto b = diagonalize(L, fast);
  EXPECT_FALSE(b.has_vectors());
  ASSERT_EQ(a.spectrum().size(), b.spectrum().size());
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(a.spectrum()[i], b.spectrum()[i], 1e-12 * std::abs(a.lambda0()));
}

TEST(Diagonalize, MaxVectorsCapsRetainedModes) {
  const auto c = SmallCaseGenerator(8).next();
  const auto L = build_coupling_matrix(c.crystal, c.spopo, {c.kappa, c.half_width, c.spopo.free_spectral_range});
  DiagonalizeOptions o;
  o.max_vectors = 7;
  const auto capped = diagonalize(L, o);
  const auto full = diagonalize(L);
  ASSERT_EQ(capped.size(), 7);
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(capped.eigenvalues()[k], full.eigenvalues()[k], 1e-12 * full.lambda0());
}

TEST(Diagonalize, ResidualToleranceIsEnforced) {
  const auto c = SmallCaseGenerator(2).next();
  const auto L = build_coupling_matrix(c.crystal, c.spopo, {c.kappa, c.half_width, c.spopo.free_spectral_range});
  DiagonalizeOptions o;
  o.residual_tolerance = 0.0;
  EXPECT_THROW(diagonalize(L, o), ConvergenceFailure);
}

TEST(Diagonalize, LargeMatrixStaysAccurate) {
  // Exercises the blocked reduction path with a partial set of vectors.
  SolveOptions o;
  o.kappa = 1000.0;
  o.half_width = 1200;
  o.diagonalize.max_vectors = 60;
  const auto b = solve_supermodes(bibo(5e-4), golden_spopo(), o);
  EXPECT_LT(b.max_residual(), 1e-12);
  const Eigen::MatrixXd gram = b.eigenvectors().transpose() * b.eigenvectors();
  EXPECT_LT((gram - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Supermodes, GeometricAlternatingSpectrumInCaseA) {
  const auto& b = coarse_case_a();
  double lo = 1e9, hi = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double r = b.eigenvalues()[k + 1] / b.eigenvalues()[k];
    EXPECT_LT(r, 0.0) << "k=" << k;
    lo = std::min(lo, std::abs(r));
    hi = std::max(hi, std::abs(r));
  }
  EXPECT_LT((hi - lo) / hi, 0.05);
}

TEST(Supermodes, NodeCountMatchesOrder) {
  const auto& b = coarse_case_a();
  for (int k = 0; k < 8; ++k) EXPECT_EQ(b.node_count(k), k);
}

TEST(Supermodes, DefiniteParityWithoutWalkoff) {
  auto crystal = bibo(1e-4);
  crystal.ks_prime = crystal.kp_prime;
  SolveOptions o;
  o.kappa = 4000.0;
  const auto b = solve_supermodes(crystal, golden_spopo(), o);
  const int M = b.grid().half_width;
  for (int k = 0; k < 12; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (int m = 1; m <= M; ++m) {
      worst = std::max(worst, std::abs(b.scaled_amplitude(k, m) - sign * b.scaled_amplitude(k, -m)));
    }
    EXPECT_LT(worst, 1e-8) << "k=" << k;
  }
}

TEST(Supermodes, EdgeWeightSmallOnDefaultGrid) {
  EXPECT_LT(coarse_case_a().edge_weight(), 1e-4);
}

TEST(Supermodes, PhysicalModeIsNormalizedOnTheComb) {
  const auto c = SmallCaseGenerator(6).next();
  const auto b = diagonalize(
      build_coupling_matrix(c.crystal, c.spopo, {c.kappa, c.half_width, c.spopo.free_spectral_range}));
  const int reach = static_cast<int>(c.kappa) * c.half_width;
  for (int k : {0, 1, 4}) {
    const auto mode = b.physical_mode(k);
    double sum = 0.0;
    for (int m = -reach; m <= reach; ++m) sum += mode(m) * mode(m);
    EXPECT_NEAR(sum, 1.0, 1e-12);
    // On grid points the physical mode is the scaled vector over sqrt(kappa).
    EXPECT_NEAR(mode(c.kappa * 3) * std::sqrt(c.kappa), b.scaled_amplitude(k, 3), 1e-3 * std::abs(b.eigenvectors().col(k).maxCoeff()));
  }
}

TEST(Supermodes, ExplicitHalfWidthIsHonoured) {
  SolveOptions o;
  o.kappa = 4000.0;
  o.half_width = 700;
  EXPECT_EQ(solve_supermodes(bibo(1e-4), golden_spopo(), o).grid().half_width, 700);
}

TEST(Supermodes, GrowthStopsAtCap) {
  SolveOptions o;
  o.kappa = 4000.0;
  o.max_half_width = 300;
  EXPECT_EQ(solve_supermodes(bibo(1e-4), golden_spopo(), o).grid().half_width, 300);
}

TEST(Analytic, CaseALeadingEigenvalue) {
  const auto a = analytic_eigensystem(bibo(1e-4), golden_spopo());
  // pi^(1/4) sqrt(2 N_p) tau_p / sqrt(tau_1^2 + tau_p^2) with tau_1 = 12.25 fs.
  const double np = 1.0 / (fixtures::two_pi * 75e6 * 100e-15);
  const double tau1 = (6.6537 - 6.2664) * 1e-9 * 1e-4 / std::sqrt(10.0);
  EXPECT_NEAR(a.lambda0, std::pow(std::numbers::pi, 0.25) * std::sqrt(2.0 * np) * 100e-15 / std::hypot(tau1, 100e-15),
              1e-9);
  EXPECT_NEAR(a.lambda0, 272.0, 1.0);
  EXPECT_TRUE(a.valid);
  EXPECT_NEAR(a.lambda0 / coarse_case_a().lambda0(), 1.0, 0.01);
}

TEST(Analytic, LongPulseLimit) {
  auto crystal = bibo(1e-4);
  crystal.ks_prime = crystal.kp_prime;
  const auto spopo = golden_spopo();
  const auto a = analytic_eigensystem(crystal, spopo);
  EXPECT_NEAR(a.lambda0 * a.lambda0, 2.0 * std::sqrt(std::numbers::pi) * spopo.pump_count(), 1e-9);
}

TEST(Analytic, CaseCOverestimates) {
  const auto a = analytic_eigensystem(bibo(5e-3), golden_spopo());
  EXPECT_NEAR(a.lambda0, 44.0, 1.0);
  EXPECT_FALSE(a.valid);
}

TEST(Analytic, RatioAndSignalWidth) {
  const auto crystal = bibo(1e-4);
  const auto spopo = golden_spopo();
  const auto a = analytic_eigensystem(crystal, spopo);
  const auto t = characteristic_times(crystal);
  const double root = std::hypot(t.tau1, spopo.pump_pulse_duration);
  EXPECT_NEAR(a.ratio, -1.0 + 2.0 * t.tau2 / root, 1e-15);
  EXPECT_NEAR(a.tau_s * a.tau_s, 2.0 * t.tau2 * root, 1e-40);
  EXPECT_NEAR(a.n_signal * spopo.free_spectral_range * a.tau_s, 1.0, 1e-12);
  EXPECT_NEAR(a.eigenvalue(3), a.lambda0 * std::pow(a.ratio, 3), 1e-12);
}

TEST(HermiteGauss, CentreValues) {
  const double ns = 80.0;
  EXPECT_NEAR(hermite_gauss_mode(0, 0.0, ns), 1.0 / std::sqrt(std::sqrt(std::numbers::pi) * ns), 1e-15);
  EXPECT_NEAR(hermite_gauss_mode(1, 0.0, ns), 0.0, 1e-15);
  EXPECT_NEAR(hermite_gauss_mode(3, 0.0, ns), 0.0, 1e-15);
}

TEST(HermiteGauss, MatchesExplicitPolynomials) {
  const double ns = 50.0;
  for (double m : {-70.0, -10.0, 0.0, 33.0}) {
    const double x = m / ns;
    const double g = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi) * ns);
    EXPECT_NEAR(hermite_gauss_mode(1, m, ns), g * std::sqrt(2.0) * x, 1e-15);
    EXPECT_NEAR(hermite_gauss_mode(2, m, ns), g * (2.0 * x * x - 1.0) / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(hermite_gauss_mode(3, m, ns), g * (2.0 * x * x * x - 3.0 * x) / std::sqrt(3.0), 1e-15);
  }
}

TEST(HermiteGauss, DiscreteOrthonormality) {
  for (double ns : {50.0, 173.5}) {
    const int reach = static_cast<int>(12.0 * ns);
    for (int k = 0; k <= 10; ++k) {
      for (int j = k; j <= 10; ++j) {
        double sum = 0.0;
        for (int m = -reach; m <= reach; ++m) sum += hermite_gauss_mode(k, m, ns) * hermite_gauss_mode(j, m, ns);
        EXPECT_NEAR(sum, j == k ? 1.0 : 0.0, 1e-8) << k << "," << j << " ns=" << ns;
      }
    }
  }
}

TEST(CompareBases, GaussianKernelReproducesHermiteGauss) {
  const auto crystal = bibo(1e-4);
  const auto spopo = golden_spopo();
  const auto basis = diagonalize(gaussian_coupling_matrix(crystal, spopo, coarse_case_a().grid()));
  for (const auto& c : compare_bases(basis, analytic_eigensystem(crystal, spopo), 6)) {
    EXPECT_GT(c.overlap, 1.0 - 1e-6) << "k=" << c.k;
  }
}

TEST(CompareBases, CaseAExactKernelOverlaps) {
  // Frozen from the exact kernel at kappa 1000 and 4000 (identical to 1e-6).
  const double expected[] = {0.99180, 0.99419, 0.98933, 0.98977};
  const auto a = analytic_eigensystem(bibo(1e-4), golden_spopo());
  const auto cmp = compare_bases(coarse_case_a(), a, 4);
  ASSERT_EQ(cmp.size(), 4u);
  for (const auto& c : cmp) {
    EXPECT_NEAR(c.overlap, expected[c.k], 2e-4) << "k=" << c.k;
    EXPECT_LT(c.relative_error, 0.02) << "k=" << c.k;
  }
}

TEST(CompareBases, CaseCDisagrees) {
  SolveOptions o;
  o.kappa = 1000.0;
  const auto b = solve_supermodes(bibo(5e-3), golden_spopo(), o);
  const auto cmp = compare_bases(b, analytic_eigensystem(bibo(5e-3), golden_spopo()), 4);
  for (const auto& c : cmp) EXPECT_LT(c.overlap, 0.99) << "k=" << c.k;
  EXPECT_NEAR(cmp[0].relative_error, (44.0 - 36.0) / 36.0, 0.05);
}

TEST(CompareBases, SelfOverlap) {
  const auto& b = coarse_case_a();
  EXPECT_NEAR(mode_overlap(b, 0, b, 0), 1.0, 1e-12);
  EXPECT_NEAR(mode_overlap(b, 0, b, 1), 0.0, 1e-12);
}

TEST(CompareBases, DifferentGridsMismatch) {
  const auto c = SmallCaseGenerator(1).next();
  const ModeGrid g{c.kappa, c.half_width, c.spopo.free_spectral_range};
  const auto a = diagonalize(build_coupling_matrix(c.crystal, c.spopo, g));
  const auto b = diagonalize(build_coupling_matrix(c.crystal, c.spopo, {g.kappa, g.half_width + 2, g.omega}));
  EXPECT_THROW(mode_overlap(a, 0, b, 0), WindowMismatch);
}

TEST(CavityRescale, PredictionLaw) {
  const auto& b = coarse_case_a();
  EXPECT_EQ(cavity_length_rescale(b, 1.0), b.eigenvalues());
  const auto four = cavity_length_rescale(b, 4.0);
  for (int k = 0; k < b.size(); ++k) EXPECT_DOUBLE_EQ(four[k], 2.0 * b.eigenvalues()[k]);
  EXPECT_THROW(cavity_length_rescale(b, 0.0), InvalidParameter);
}

TEST(CavityRescale, CaseAAtHalfRepetitionRate) {
  auto spopo = golden_spopo();
  spopo.free_spectral_range /= 2.0;
  SolveOptions o;
  o.kappa = 4000.0;
  const auto rebuilt = solve_supermodes(bibo(1e-4), spopo, o);
  const double predicted = cavity_length_rescale(coarse_case_a(), 2.0).front();
  EXPECT_NEAR(rebuilt.lambda0() / predicted, 1.0, 1e-3);
}

TEST(CaseA, LeadingEigenvalueIndependentOfScale) {
  SolveOptions o;
  o.kappa = 2000.0;
  const auto fine = solve_supermodes(bibo(1e-4), golden_spopo(), o);
  EXPECT_NEAR(fine.lambda0() / coarse_case_a().lambda0(), 1.0, 1e-3);
  EXPECT_NEAR(fine.lambda0(), 270.0, 0.03 * 270.0);
}
