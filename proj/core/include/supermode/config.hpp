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
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "supermode/dispersion.hpp"
#include "supermode/squeezing.hpp"

namespace supermode::cli {

struct Numerics {
  double kappa = 1000.0;                // resolved at parse time when absent
  std::optional<int> grid_half_width;
  double epsilon_significant = 1e-3;
  int max_half_width = 2500;
  bool operator==(const Numerics&) const = default;
};

struct LoSpec {
  enum class Kind { gauss_hermite, supermode };
  Kind kind = Kind::gauss_hermite;
  int order = 0;
  double width = 0.0;                // N_L, physical modes (Hermite-Gauss only)
  std::optional<double> phase;       // empty: better of 0 and pi/2
  bool operator==(const LoSpec&) const = default;
};

struct DiagonalizeAnalysis {
  int waveform_modes = 4;
  bool export_matrix = false;
  bool operator==(const DiagonalizeAnalysis&) const = default;
};

struct ThresholdAnalysis {
  bool operator==(const ThresholdAnalysis&) const = default;
};

struct SqueezeAnalysis {
  std::optional<double> pump_ratio;
  std::vector<double> noise_frequencies{0.0};
  std::vector<double> bounds_db{-5.0};
  int modes = 4;
  std::vector<LoSpec> los;
  bool operator==(const SqueezeAnalysis&) const = default;
};

struct CountAnalysis {
  std::optional<double> pump_ratio;
  double noise_frequency = 0.0;
  std::vector<double> bounds_db{-5.0};
  std::vector<std::pair<double, double>> bands_db;  // (lower, upper]
  bool operator==(const CountAnalysis&) const = default;
};

struct LoOptimizeAnalysis {
  std::optional<double> pump_ratio;
  double noise_frequency = 0.0;
  std::vector<int> orders{0, 1, 2, 3};
  LoObjective objective = LoObjective::minimum_variance;
  bool operator==(const LoOptimizeAnalysis&) const = default;
};

struct LengthSweepAnalysis {
  std::vector<double> lengths;  // m, ascending
  bool operator==(const LengthSweepAnalysis&) const = default;
};

struct CompareAnalyticAnalysis {
  int k_max = 4;
  bool operator==(const CompareAnalyticAnalysis&) const = default;
};

using Analysis = std::variant<DiagonalizeAnalysis, ThresholdAnalysis, SqueezeAnalysis, CountAnalysis,
                              LoOptimizeAnalysis, LengthSweepAnalysis, CompareAnalyticAnalysis>;

const char* analysis_name(const Analysis& a);

struct RunConfig {
  CrystalDispersion crystal;
  SpopoConfig spopo;
  Numerics numerics;
  std::vector<Analysis> analyses;
  bool operator==(const RunConfig&) const = default;
};

// Throws ParseError, UnknownPreset, IncompletePreset, ConflictingPump, MissingTp.
RunConfig parse_config(std::istream& in);
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_string(const std::string& text);

// Fully resolved config as JSON text (SI numbers); parses back to an equal RunConfig.
std::string config_to_json(const RunConfig& config, int indent = 2);

}  // namespace supermode::cli
