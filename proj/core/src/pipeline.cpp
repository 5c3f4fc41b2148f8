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

#include "supermode/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <numbers>
#include <thread>

#include "supermode/coupling.hpp"
#include "supermode/errors.hpp"

#ifndef SUPERMODE_VERSION
#define SUPERMODE_VERSION "0.0.0"
#endif

namespace supermode::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool needs_basis(const Analysis& a) { return !std::holds_alternative<LengthSweepAnalysis>(a); }

bool needs_vectors(const Analysis& a) {
  return std::holds_alternative<DiagonalizeAnalysis>(a) || std::holds_alternative<SqueezeAnalysis>(a) ||
         std::holds_alternative<LoOptimizeAnalysis>(a) || std::holds_alternative<CompareAnalyticAnalysis>(a);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_db(double db) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", db);
  return buf;
}

double best_db(double lam_ratio, double r, double w) {
  const Quadrature q = lam_ratio >= 0.0 ? Quadrature::minus : Quadrature::plus;
  return to_db(quadrature_variance(lam_ratio, r, w, q));
}

Waveforms sample_waveforms(const SupermodeBasis& basis, const AnalyticEigensystem& analytic, int modes) {
  Waveforms wf;
  const int M = basis.grid().half_width;
  double second = 0.0;
  for (int m = -M; m <= M; ++m) second += static_cast<double>(m) * m * std::pow(basis.scaled_amplitude(0, m), 2);
  const double width = basis.kappa() * std::sqrt(2.0 * second);
  const double reach = std::min(4.0 * width, basis.kappa() * M);
  constexpr int points = 401;
  for (int i = 0; i < points; ++i) wf.index.push_back(std::round(-reach + 2.0 * reach * i / (points - 1)));
  const int top = std::min(modes, basis.size());
  for (int k = 0; k < top; ++k) {
    const auto mode = basis.physical_mode(k);
    std::vector<double> num, ana;
    for (double m : wf.index) {
      num.push_back(mode(m));
      ana.push_back(hermite_gauss_mode(k, m, analytic.n_signal));
    }
    wf.numeric.push_back(std::move(num));
    wf.analytic.push_back(std::move(ana));
  }
  return wf;
}

MatrixPreview preview_matrix(const RunConfig& config, const ModeGrid& grid) {
  const CouplingMatrix L = build_coupling_matrix(config.crystal, config.spopo, grid);
  MatrixPreview p;
  const int M = grid.half_width;
  p.stride = std::max(1, (2 * M + 1) / 201);
  for (int m = -(M / p.stride) * p.stride; m <= M; m += p.stride) p.index.push_back(m);
  for (int m : p.index) {
    std::vector<double> row;
    for (int q : p.index) row.push_back(L(m, q));
    p.values.push_back(std::move(row));
  }
  return p;
}

}  // namespace

int worker_threads_from_env() {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SUPERMODE_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) return std::min(cap, hw);
  }
  return hw;
}

RunReport run(const RunConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.config = config;
  rep.validity = gaussian_validity(config.crystal, config.spopo);
  const int threads = options.threads > 0 ? options.threads : worker_threads_from_env();

  const bool basis_needed = std::any_of(config.analyses.begin(), config.analyses.end(), needs_basis);
  const bool vectors_needed = std::any_of(config.analyses.begin(), config.analyses.end(), needs_vectors);

  std::optional<SupermodeBasis> basis;
  if (basis_needed) {
    try {
      SolveOptions solve;
      solve.kappa = config.numerics.kappa;
      solve.half_width = config.numerics.grid_half_width;
      solve.max_half_width = config.numerics.max_half_width;
      solve.diagonalize.epsilon = config.numerics.epsilon_significant;
      solve.diagonalize.compute_vectors = vectors_needed;
      basis.emplace(solve_supermodes(config.crystal, config.spopo, solve));
    } catch (const Error& e) {
      throw AnalysisError("diagonalize", e);
    }

    SpectrumSummary s;
    s.kappa = basis->kappa();
    s.half_width = basis->grid().half_width;
    s.lambda0 = basis->lambda0();
    s.leading_negative = basis->leading_negative();
    s.n_significant = basis->n_significant();
    s.max_residual = basis->max_residual();
    if (basis->has_vectors()) {
      s.edge_weight = basis->edge_weight();
      for (int k = 0; k < basis->size(); ++k) s.node_counts.push_back(basis->node_count(k));
    }
    s.eigenvalues.assign(basis->spectrum().begin(), basis->spectrum().begin() + s.n_significant);
    rep.spectrum = s;
    rep.analytic = analytic_eigensystem(config.crystal, config.spopo);

    if (s.leading_negative) {
      rep.warnings.push_back("largest-magnitude eigenvalue is negative; quadrature roles are swapped");
    }
    if (basis->has_vectors() && s.edge_weight > 1e-4) {
      rep.warnings.push_back("supermodes reach the grid edge (edge weight " + format_db(s.edge_weight) +
                             "); raise numerics.max_half_width or grid_half_width");
    }

    const ThresholdReport t = threshold_report(config.crystal, config.spopo, s.lambda0);
    const bool threshold_requested = std::any_of(config.analyses.begin(), config.analyses.end(), [](const auto& a) {
      return std::holds_alternative<ThresholdAnalysis>(a);
    });
    if (threshold_requested || config.spopo.pump_irradiance) rep.threshold = t;
    rep.pump_ratio = config.spopo.pump_ratio ? *config.spopo.pump_ratio
                                             : pump_ratio_from_irradiance(*config.spopo.pump_irradiance, t.p_thr);
  }

  bool curve_done = false;
  for (const auto& analysis : config.analyses) {
    const char* name = analysis_name(analysis);
    try {
      std::visit(
          overloaded{
              [&](const DiagonalizeAnalysis& a) {
                rep.waveforms = sample_waveforms(*basis, *rep.analytic, a.waveform_modes);
                if (a.export_matrix) rep.matrix_preview = preview_matrix(config, basis->grid());
              },
              [&](const ThresholdAnalysis&) {},
              [&](const SqueezeAnalysis& a) {
                const double r = a.pump_ratio.value_or(*rep.pump_ratio);
                for (double w : a.noise_frequencies) {
                  SqueezingReport sq = squeezing_report(*basis, r, w, a.bounds_db, a.modes);
                  for (const auto& mv : sq.per_mode) {
                    VarianceRow row;
                    row.noise_frequency = w;
                    row.k = mv.k;
                    row.lam_ratio = mv.lam_ratio;
                    row.v_minus = mv.v_minus;
                    row.v_plus = mv.v_plus;
                    row.perfect_db = to_db(std::min(mv.v_minus, mv.v_plus));
                    rep.variances.push_back(row);
                  }
                  for (const auto& spec : a.los) {
                    std::vector<double> phases;
                    if (spec.phase) {
                      phases.push_back(*spec.phase);
                    } else {
                      phases = {0.0, std::numbers::pi / 2.0};
                    }
                    std::optional<LoResult> best;
                    for (double phase : phases) {
                      const LocalOscillator lo = spec.kind == LoSpec::Kind::gauss_hermite
                                                     ? gauss_hermite_lo(spec.order, spec.width, phase,
                                                                        basis_window(*basis))
                                                     : supermode_lo(*basis, spec.order, phase);
                      const HomodyneResult h = homodyne_spectrum(*basis, lo, r, w);
                      if (h.incomplete) {
                        rep.warnings.push_back(lo.descriptor() + ": LO weight outside the retained basis (" +
                                               format_db(h.residual_weight) + ") counted as shot noise");
                      }
                      if (!best || h.variance < best->variance) best = LoResult{lo.descriptor(), h.variance, h.residual_weight};
                    }
                    sq.lo_results.push_back(*best);
                    if (spec.kind != LoSpec::Kind::gauss_hermite) continue;
                    for (auto& row : rep.variances) {
                      if (row.noise_frequency == w && row.k == spec.order && !row.gh_db) {
                        row.gh_db = to_db(best->variance);
                        row.gh_width = spec.width;
                      }
                    }
                  }
                  if (!curve_done) {
                    for (int k = 0; k < basis->n_significant(); ++k) {
                      const double x = basis->spectrum()[static_cast<std::size_t>(k)] / std::abs(basis->lambda0());
                      rep.variance_curve_db.push_back(best_db(x, r, w));
                    }
                    curve_done = true;
                  }
                  rep.squeezing.push_back(std::move(sq));
                }
              },
              [&](const CountAnalysis& a) {
                const double r = a.pump_ratio.value_or(*rep.pump_ratio);
                for (double bound : a.bounds_db) {
                  rep.counts.push_back({"< " + format_db(bound) + " dB", r, a.noise_frequency,
                                        count_squeezed(*basis, r, a.noise_frequency, bound)});
                }
                for (const auto& [lo, hi] : a.bands_db) {
                  rep.counts.push_back({"(" + format_db(lo) + ", " + format_db(hi) + "] dB", r, a.noise_frequency,
                                        count_in_band(*basis, r, a.noise_frequency, lo, hi)});
                }
              },
              [&](const LoOptimizeAnalysis& a) {
                const double r = a.pump_ratio.value_or(*rep.pump_ratio);
                LoSearchOptions search;
                search.objective = a.objective;
                for (int k : a.orders) {
                  const LoOptimum o = optimize_gh_lo(*basis, k, r, a.noise_frequency, search);
                  rep.lo_optima.push_back(
                      {k, to_string(a.objective), a.noise_frequency, o.n_l, o.phase, to_db(o.variance), o.overlap});
                }
              },
              [&](const LengthSweepAnalysis& a) {
                SweepOptions sweep;
                sweep.max_half_width = config.numerics.max_half_width;
                sweep.threads = threads;
                rep.sweep = length_sweep(config.crystal, config.spopo, a.lengths, sweep);
              },
              [&](const CompareAnalyticAnalysis& a) {
                rep.comparison = compare_bases(*basis, *rep.analytic, a.k_max);
                if (!rep.analytic->valid) {
                  rep.warnings.push_back("configuration is outside the Gaussian regime; analytic values are indicative");
                }
              },
          },
          analysis);
    } catch (const AnalysisError&) {
      throw;
    } catch (const Error& e) {
      throw AnalysisError(name, e);
    }
  }

  rep.provenance.version = SUPERMODE_VERSION;
  rep.provenance.timestamp = utc_timestamp();
  rep.provenance.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace supermode::cli
