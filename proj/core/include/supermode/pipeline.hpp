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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "supermode/config.hpp"
#include "supermode/spectral.hpp"
#include "supermode/squeezing.hpp"
#include "supermode/threshold.hpp"

namespace supermode::cli {

struct SpectrumSummary {
  double kappa = 0.0;
  int half_width = 0;
  double lambda0 = 0.0;
  bool leading_negative = false;
  int n_significant = 0;
  double edge_weight = 0.0;
  double max_residual = 0.0;
  std::vector<double> eigenvalues;  // top n_significant, physical
  std::vector<int> node_counts;     // for retained modes, same order
};

struct Waveforms {
  std::vector<double> index;                  // physical mode index
  std::vector<std::vector<double>> numeric;   // one series per supermode
  std::vector<std::vector<double>> analytic;  // Hermite-Gauss of the same order
};

struct MatrixPreview {
  int stride = 1;
  std::vector<int> index;  // scaled indices sampled
  std::vector<std::vector<double>> values;
};

struct VarianceRow {
  double noise_frequency = 0.0;
  int k = 0;
  double lam_ratio = 0.0;
  double v_minus = 1.0;
  double v_plus = 1.0;
  double perfect_db = 0.0;            // better quadrature, LO matched to the supermode
  std::optional<double> gh_db;        // Hermite-Gauss LO of the same order
  std::optional<double> gh_width;
};

struct LoOptimumRow {
  int order = 0;
  std::string objective;
  double noise_frequency = 0.0;
  double n_l = 0.0;
  double phase = 0.0;
  double variance_db = 0.0;
  double overlap = 0.0;
};

struct CountRow {
  std::string label;  // "< -5 dB" or "(-25.6, -24.6] dB"
  double pump_ratio = 0.0;
  double noise_frequency = 0.0;
  int count = 0;
};

struct Provenance {
  std::string version;
  std::string timestamp;
  double wall_time_s = 0.0;
};

struct RunReport {
  RunConfig config;
  ValidityVerdict validity;
  std::optional<double> pump_ratio;
  std::optional<SpectrumSummary> spectrum;
  std::optional<AnalyticEigensystem> analytic;
  std::optional<ThresholdReport> threshold;
  std::vector<SqueezingReport> squeezing;
  std::vector<VarianceRow> variances;
  std::vector<LoOptimumRow> lo_optima;
  std::vector<CountRow> counts;
  std::vector<SweepRow> sweep;
  std::vector<BasisComparison> comparison;
  std::optional<Waveforms> waveforms;
  std::optional<MatrixPreview> matrix_preview;
  std::vector<double> variance_curve_db;  // better-quadrature dB for every significant mode
  std::vector<std::string> warnings;
  Provenance provenance;
};

struct RunOptions {
  int threads = 0;  // 0: SUPERMODE_LAB_THREADS or 1
};

int worker_threads_from_env();

// Executes the analyses, sharing one diagonalization. Module errors are rethrown
// as AnalysisError tagged with the analysis name.
RunReport run(const RunConfig& config, const RunOptions& options = {});

enum class OutputFormat { json, csv_tables, plot_data };
OutputFormat parse_format(const std::string& s);

// Serializes the report. `with_provenance` false drops the timestamp and wall time.
std::string report_to_json(const RunReport& report, bool with_provenance = true, int indent = 2);

// Writes report.json plus the files of `format`; returns the paths written.
std::vector<std::filesystem::path> emit(const RunReport& report, OutputFormat format,
                                        const std::filesystem::path& out_dir);

}  // namespace supermode::cli
