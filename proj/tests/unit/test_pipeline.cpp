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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "supermode/config.hpp"
#include "supermode/errors.hpp"
#include "supermode/pipeline.hpp"

using namespace supermode;
using namespace supermode::cli;
namespace fs = std::filesystem;

namespace {

// Case A physics on a coarse grid so each run takes well under a second.
RunConfig coarse_case_a() {
  auto cfg = parse_config(fs::path(SUPERMODE_CONFIG_DIR) / "case-a.json");
  cfg.numerics.kappa = 8000.0;
  return cfg;
}

RunConfig with_analyses(std::vector<Analysis> analyses) {
  auto cfg = coarse_case_a();
  cfg.analyses = std::move(analyses);
  return cfg;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("supermode-test-" + name);
  fs::remove_all(dir);
  return dir;
}

std::set<std::string> file_names(const std::vector<fs::path>& paths) {
  std::set<std::string> out;
  for (const auto& p : paths) out.insert(p.filename().string());
  return out;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

SqueezeAnalysis table_squeeze() {
  SqueezeAnalysis s;
  s.noise_frequencies = {0.0, 0.5};
  s.los = {{LoSpec::Kind::gauss_hermite, 0, 2.2e5, std::nullopt},
           {LoSpec::Kind::gauss_hermite, 1, 2.2e5, std::nullopt},
           {LoSpec::Kind::supermode, 2, 0.0, 1.5707963267948966}};
  return s;
}

}  // namespace

TEST(Run, EmptyAnalysesEchoesConfigAndValidity) {
  const auto cfg = with_analyses({});
  const auto rep = run(cfg);
  EXPECT_EQ(rep.config, cfg);
  EXPECT_TRUE(rep.validity.pulse_condition);
  EXPECT_FALSE(rep.spectrum);
  EXPECT_FALSE(rep.threshold);
  EXPECT_TRUE(rep.variances.empty());
  EXPECT_TRUE(rep.counts.empty());
  EXPECT_TRUE(rep.sweep.empty());
}

TEST(Run, CoarseCaseA) {
  CountAnalysis count;
  count.bands_db = {{-25.6, -24.6}};
  const auto rep = run(with_analyses({DiagonalizeAnalysis{}, ThresholdAnalysis{}, table_squeeze(), count}));
  ASSERT_TRUE(rep.spectrum);
  EXPECT_NEAR(rep.spectrum->lambda0, 270.0, 0.03 * 270.0);
  EXPECT_EQ(rep.spectrum->kappa, 8000.0);
  ASSERT_TRUE(rep.threshold);
  EXPECT_NEAR(rep.threshold->power_thr, 29e-3, 0.1 * 29e-3);
  ASSERT_EQ(rep.variances.size(), 8u);
  EXPECT_NEAR(rep.variances[0].perfect_db, -25.6, 0.2);
  ASSERT_TRUE(rep.variances[0].gh_db);
  EXPECT_GE(*rep.variances[0].gh_db, rep.variances[0].perfect_db - 1e-9);
  EXPECT_FALSE(rep.variances[2].gh_db);
  ASSERT_EQ(rep.squeezing.size(), 2u);
  EXPECT_EQ(rep.squeezing[0].lo_results.size(), 3u);
  EXPECT_NEAR(rep.squeezing[0].lo_results[2].variance, rep.variances[2].v_minus, 1e-12);
  ASSERT_EQ(rep.counts.size(), 2u);
  EXPECT_EQ(rep.counts[0].label, "< -5 dB");
  EXPECT_GT(rep.counts[0].count, 30);
  ASSERT_TRUE(rep.waveforms);
  EXPECT_EQ(rep.waveforms->numeric.size(), 4u);
  EXPECT_EQ(rep.variance_curve_db.size(), static_cast<std::size_t>(rep.spectrum->n_significant));
}

TEST(Run, DeterministicApartFromProvenance) {
  LoOptimizeAnalysis opt;
  opt.orders = {0, 1};
  const auto cfg = with_analyses({table_squeeze(), opt, CompareAnalyticAnalysis{}});
  const auto a = report_to_json(run(cfg, {.threads = 1}), false);
  const auto b = report_to_json(run(cfg, {.threads = 3}), false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("timestamp"), std::string::npos);
  EXPECT_NE(report_to_json(run(cfg), true).find("timestamp"), std::string::npos);
}

TEST(Run, ReportJsonEchoesConfigThatParsesBack) {
  const auto cfg = with_analyses({ThresholdAnalysis{}, table_squeeze()});
  const auto doc = nlohmann::json::parse(report_to_json(run(cfg)));
  EXPECT_EQ(parse_config_string(doc.at("config").dump()), cfg);
}

TEST(Run, ErrorsAreTaggedWithTheAnalysis) {
  SqueezeAnalysis bad;
  bad.los = {{LoSpec::Kind::supermode, 100000, 0.0, 0.0}};
  try {
    run(with_analyses({ThresholdAnalysis{}, bad}));
    FAIL() << "expected AnalysisError";
  } catch (const AnalysisError& e) {
    EXPECT_EQ(e.analysis(), "squeeze");
    EXPECT_EQ(e.kind(), ErrorKind::config);
  }

  auto narrow = with_analyses({DiagonalizeAnalysis{}});
  narrow.numerics.grid_half_width = 10;
  try {
    run(narrow);
    FAIL() << "expected AnalysisError";
  } catch (const AnalysisError& e) {
    EXPECT_EQ(e.analysis(), "diagonalize");
    EXPECT_EQ(e.kind(), ErrorKind::numeric);
  }
}

TEST(Run, IrradianceSetsThePumpRatio) {
  auto cfg = with_analyses({ThresholdAnalysis{}});
  const auto base = run(cfg);
  cfg.spopo.pump_ratio.reset();
  cfg.spopo.pump_irradiance = 0.25 * base.threshold->p_thr;
  const auto rep = run(cfg);
  ASSERT_TRUE(rep.pump_ratio);
  EXPECT_NEAR(*rep.pump_ratio, 0.5, 1e-12);
}

TEST(Emit, JsonOnlyForEmptyAnalyses) {
  const auto dir = scratch_dir("empty");
  const auto written = emit(run(with_analyses({})), OutputFormat::csv_tables, dir);
  EXPECT_EQ(file_names(written), std::set<std::string>{"report.json"});
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 1);
  fs::remove_all(dir);
}

TEST(Emit, CsvTablesAreFiniteAndSqueezedColumnsNonPositive) {
  const auto dir = scratch_dir("csv");
  const auto rep = run(with_analyses({DiagonalizeAnalysis{}, table_squeeze()}));
  const auto written = emit(rep, OutputFormat::csv_tables, dir);
  EXPECT_EQ(file_names(written), (std::set<std::string>{"report.json", "eigenvalues.csv", "variances.csv"}));

  for (const char* name : {"eigenvalues.csv", "variances.csv"}) {
    const auto rows = read_csv(dir / name);
    ASSERT_GT(rows.size(), 1u) << name;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      ASSERT_EQ(rows[i].size(), rows[0].size()) << name << " row " << i;
      for (const auto& cell : rows[i]) {
        if (cell.empty()) continue;
        EXPECT_TRUE(std::isfinite(std::stod(cell))) << name << ": " << cell;
      }
    }
  }
  const auto var = read_csv(dir / "variances.csv");
  EXPECT_EQ(var[0][5], "perfect_db");
  for (std::size_t i = 1; i < var.size(); ++i) {
    EXPECT_LE(std::stod(var[i][5]), 0.0);
    if (!var[i][6].empty()) {
      EXPECT_LE(std::stod(var[i][6]), 0.0);
    }
  }
  fs::remove_all(dir);
}

TEST(Emit, PlotDataFiles) {
  const auto dir = scratch_dir("plot");
  DiagonalizeAnalysis diag;
  diag.export_matrix = true;
  const auto written = emit(run(with_analyses({diag, table_squeeze()})), OutputFormat::plot_data, dir);
  EXPECT_EQ(file_names(written), (std::set<std::string>{"report.json", "spectrum.dat", "waveforms.dat",
                                                        "variance_vs_k.dat", "matrix.dat"}));
  std::ifstream in(dir / "waveforms.dat");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("# m numeric_0", 0), 0u);
  fs::remove_all(dir);
}

TEST(Format, Names) {
  EXPECT_EQ(parse_format("json"), OutputFormat::json);
  EXPECT_EQ(parse_format("csv-tables"), OutputFormat::csv_tables);
  EXPECT_EQ(parse_format("plot-data"), OutputFormat::plot_data);
  EXPECT_THROW(parse_format("xml"), ParseError);
}

TEST(Threads, EnvironmentCapsWorkers) {
  ::setenv("SUPERMODE_LAB_THREADS", "1", 1);
  EXPECT_EQ(worker_threads_from_env(), 1);
  ::setenv("SUPERMODE_LAB_THREADS", "junk", 1);
  EXPECT_GE(worker_threads_from_env(), 1);
  ::unsetenv("SUPERMODE_LAB_THREADS");
  EXPECT_GE(worker_threads_from_env(), 1);
}
