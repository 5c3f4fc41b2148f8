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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "supermode/config.hpp"
#include "supermode/dispersion.hpp"
#include "supermode/errors.hpp"
#include "supermode/pipeline.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_numeric = 3;

using namespace supermode;

void print_summary(const cli::RunReport& r) {
  std::printf("regime: %s\n", to_string(r.validity.regime));
  if (r.spectrum) {
    std::printf("lambda0: %.6g (kappa %g, half-width %d, %d significant)\n", r.spectrum->lambda0,
                r.spectrum->kappa, r.spectrum->half_width, r.spectrum->n_significant);
  }
  if (r.analytic) std::printf("analytic lambda0: %.6g\n", r.analytic->lambda0);
  if (r.threshold) {
    std::printf("threshold: %.6g W/m^2, %.6g mW\n", r.threshold->p_thr, r.threshold->power_thr * 1e3);
  }
  for (const auto& c : r.counts) std::printf("modes %s: %d\n", c.label.c_str(), c.count);
  for (const auto& o : r.lo_optima) {
    std::printf("GH LO k=%d: N_L=%.4g phase=%.4g V=%.3f dB\n", o.order, o.n_l, o.phase, o.variance_db);
  }
  for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supermode analysis of synchronously pumped OPOs below threshold"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> formats{"json"};
  double kappa = 0.0;
  bool quiet = false;

  auto* run_cmd = app.add_subcommand("run", "Run the analyses of a config file");
  run_cmd->add_option("config", config_path, "Config file (JSON)")->required();
  run_cmd->add_option("--out-dir", out_dir, "Output directory");
  run_cmd->add_option("--format", formats, "json, csv-tables or plot-data (repeatable)")->take_all();
  run_cmd->add_option("--kappa", kappa, "Override the grid scale factor")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--quiet", quiet, "Suppress the summary");

  auto* validate_cmd = app.add_subcommand("validate", "Parse and check a config file");
  validate_cmd->add_option("config", config_path, "Config file (JSON)")->required();
  validate_cmd->add_flag("--quiet", quiet, "Suppress output");

  auto* presets_cmd = app.add_subcommand("presets", "Crystal presets");
  presets_cmd->require_subcommand(1);
  auto* list_cmd = presets_cmd->add_subcommand("list", "List crystal presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    if (list_cmd->parsed()) {
      for (const auto& p : crystal_presets()) {
        std::printf("%-20s %-14s %s\n", p.name.c_str(), p.values ? "shipped" : "user-supplied",
                    p.description.c_str());
      }
      return 0;
    }

    cli::RunConfig config = cli::parse_config(std::filesystem::path(config_path));
    if (kappa > 0.0) config.numerics.kappa = kappa;

    if (validate_cmd->parsed()) {
      if (!quiet) {
        const auto v = gaussian_validity(config.crystal, config.spopo);
        std::printf("ok: %s, l=%g m, regime %s, kappa %g, %zu analyses\n", config.crystal.label.c_str(),
                    config.crystal.length, to_string(v.regime), config.numerics.kappa, config.analyses.size());
      }
      return 0;
    }

    std::vector<cli::OutputFormat> parsed;
    for (const auto& f : formats) parsed.push_back(cli::parse_format(f));
    const cli::RunReport report = cli::run(config);
    std::set<std::filesystem::path> written;
    for (auto f : parsed) {
      for (const auto& p : cli::emit(report, f, out_dir)) {
        if (written.insert(p).second && !quiet) std::printf("wrote %s\n", p.string().c_str());
      }
    }
    if (!quiet) print_summary(report);
    return 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == ErrorKind::config ? exit_config : exit_numeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
