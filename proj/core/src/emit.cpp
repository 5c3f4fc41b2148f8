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
#include <fstream>

#include "json.hpp"
#include "supermode/errors.hpp"
#include "supermode/pipeline.hpp"

namespace supermode::cli {

namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  std::ofstream& stream() { return out_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

json squeezing_json(const SqueezingReport& s) {
  json j;
  j["pump_ratio"] = s.pump_ratio;
  j["noise_frequency"] = s.noise_frequency;
  j["per_mode"] = json::array();
  for (const auto& m : s.per_mode) {
    j["per_mode"].push_back({{"k", m.k},
                             {"lam_ratio", m.lam_ratio},
                             {"v_minus", m.v_minus},
                             {"v_plus", m.v_plus},
                             {"v_minus_db", m.v_minus_db}});
  }
  j["counts"] = json::array();
  for (const auto& [bound, n] : s.counts) j["counts"].push_back({{"bound_db", bound}, {"count", n}});
  j["lo_results"] = json::array();
  for (const auto& lo : s.lo_results) {
    j["lo_results"].push_back({{"descriptor", lo.descriptor},
                               {"variance", lo.variance},
                               {"variance_db", to_db(lo.variance)},
                               {"residual_weight", lo.residual_weight}});
  }
  return j;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv-tables") return OutputFormat::csv_tables;
  if (s == "plot-data") return OutputFormat::plot_data;
  throw ParseError("--format", "format must be json, csv-tables or plot-data");
}

std::string report_to_json(const RunReport& r, bool with_provenance, int indent) {
  json j;
  j["config"] = json::parse(config_to_json(r.config));
  const auto& v = r.validity;
  j["validity"] = {{"regime", to_string(v.regime)},
                   {"pulse_condition", v.pulse_condition},
                   {"pulse_bound_s", v.pulse_bound},
                   {"pulse_margin", v.pulse_margin},
                   {"length_condition", v.length_condition},
                   {"length_bound_m", v.length_bound},
                   {"length_margin", v.length_margin}};
  if (r.pump_ratio) j["pump_ratio"] = *r.pump_ratio;
  if (r.spectrum) {
    const auto& s = *r.spectrum;
    j["spectrum"] = {{"kappa", s.kappa},
                     {"half_width", s.half_width},
                     {"lambda0", s.lambda0},
                     {"leading_negative", s.leading_negative},
                     {"n_significant", s.n_significant},
                     {"edge_weight", s.edge_weight},
                     {"max_residual", s.max_residual},
                     {"eigenvalues", s.eigenvalues}};
  }
  if (r.analytic) {
    j["analytic"] = {{"lambda0", r.analytic->lambda0},
                     {"ratio", r.analytic->ratio},
                     {"n_signal", r.analytic->n_signal},
                     {"tau_s", r.analytic->tau_s},
                     {"valid", r.analytic->valid}};
  }
  if (r.threshold) {
    const auto& t = *r.threshold;
    j["threshold"] = {{"p0", t.p0},           {"p_thr", t.p_thr}, {"power_thr", t.power_thr},
                      {"lambda0", t.lambda0}, {"pi0", t.pi0},     {"gamma_s", t.gamma_s}};
  }
  if (!r.squeezing.empty()) {
    j["squeezing"] = json::array();
    for (const auto& s : r.squeezing) j["squeezing"].push_back(squeezing_json(s));
  }
  if (!r.variances.empty()) {
    j["variances"] = json::array();
    for (const auto& row : r.variances) {
      j["variances"].push_back({{"noise_frequency", row.noise_frequency},
                                {"k", row.k},
                                {"lam_ratio", row.lam_ratio},
                                {"v_minus", row.v_minus},
                                {"v_plus", row.v_plus},
                                {"perfect_db", row.perfect_db},
                                {"gh_db", optional_number(row.gh_db)},
                                {"gh_width", optional_number(row.gh_width)}});
    }
  }
  if (!r.lo_optima.empty()) {
    j["lo_optima"] = json::array();
    for (const auto& o : r.lo_optima) {
      j["lo_optima"].push_back({{"order", o.order},
                                {"objective", o.objective},
                                {"noise_frequency", o.noise_frequency},
                                {"n_l", o.n_l},
                                {"phase", o.phase},
                                {"variance_db", o.variance_db},
                                {"overlap", o.overlap}});
    }
  }
  if (!r.counts.empty()) {
    j["counts"] = json::array();
    for (const auto& c : r.counts) {
      j["counts"].push_back({{"label", c.label},
                             {"pump_ratio", c.pump_ratio},
                             {"noise_frequency", c.noise_frequency},
                             {"count", c.count}});
    }
  }
  if (!r.sweep.empty()) {
    j["sweep"] = json::array();
    for (const auto& s : r.sweep) {
      j["sweep"].push_back({{"length", s.length},
                            {"kappa", s.kappa},
                            {"half_width", s.half_width},
                            {"regime", to_string(s.regime)},
                            {"lambda0_numeric", s.lambda0_numeric},
                            {"lambda0_analytic", s.lambda0_analytic},
                            {"product_numeric", s.product_numeric},
                            {"product_analytic", s.product_analytic},
                            {"p_thr", s.p_thr},
                            {"power_thr", s.power_thr}});
    }
  }
  if (!r.comparison.empty()) {
    j["comparison"] = json::array();
    for (const auto& c : r.comparison) {
      j["comparison"].push_back({{"k", c.k},
                                 {"overlap", c.overlap},
                                 {"lambda_numeric", c.lambda_numeric},
                                 {"lambda_analytic", c.lambda_analytic},
                                 {"relative_error", c.relative_error}});
    }
  }
  j["warnings"] = r.warnings;
  if (with_provenance) {
    j["provenance"] = {{"version", r.provenance.version},
                       {"timestamp", r.provenance.timestamp},
                       {"wall_time_s", r.provenance.wall_time_s}};
  } else {
    j["provenance"] = {{"version", r.provenance.version}};
  }
  return j.dump(indent);
}

std::vector<std::filesystem::path> emit(const RunReport& r, OutputFormat format, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  {
    Writer w(dir / "report.json");
    w.stream() << report_to_json(r) << '\n';
    written.push_back(w.path());
  }

  if (format == OutputFormat::csv_tables) {
    if (r.spectrum) {
      Writer w(dir / "eigenvalues.csv");
      w.stream() << "k,lambda,lambda_ratio,analytic_lambda\n";
      const auto& s = *r.spectrum;
      for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        w.stream() << k << ',' << num(s.eigenvalues[k]) << ',' << num(s.eigenvalues[k] / std::abs(s.lambda0)) << ','
                   << num(r.analytic->eigenvalue(static_cast<int>(k))) << '\n';
      }
      written.push_back(w.path());
    }
    if (!r.variances.empty()) {
      Writer w(dir / "variances.csv");
      w.stream() << "noise_frequency,k,lambda_ratio,v_minus,v_plus,perfect_db,gh_db,gh_width\n";
      for (const auto& row : r.variances) {
        w.stream() << num(row.noise_frequency) << ',' << row.k << ',' << num(row.lam_ratio) << ','
                   << num(row.v_minus) << ',' << num(row.v_plus) << ',' << num(row.perfect_db) << ','
                   << (row.gh_db ? num(*row.gh_db) : "") << ',' << (row.gh_width ? num(*row.gh_width) : "")
                   << '\n';
      }
      written.push_back(w.path());
    }
    if (!r.sweep.empty()) {
      Writer w(dir / "sweep.csv");
      w.stream() << "length_m,kappa,half_width,regime,lambda0_numeric,lambda0_analytic,product_numeric,"
                    "product_analytic,p_thr,power_thr\n";
      for (const auto& s : r.sweep) {
        w.stream() << num(s.length) << ',' << num(s.kappa) << ',' << s.half_width << ',' << to_string(s.regime)
                   << ',' << num(s.lambda0_numeric) << ',' << num(s.lambda0_analytic) << ','
                   << num(s.product_numeric) << ',' << num(s.product_analytic) << ',' << num(s.p_thr) << ','
                   << num(s.power_thr) << '\n';
      }
      written.push_back(w.path());
    }
  }

  if (format == OutputFormat::plot_data) {
    if (r.spectrum) {
      Writer w(dir / "spectrum.dat");
      w.stream() << "# k lambda lambda_ratio analytic_lambda\n";
      const auto& s = *r.spectrum;
      for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        w.stream() << k << ' ' << num(s.eigenvalues[k]) << ' ' << num(s.eigenvalues[k] / std::abs(s.lambda0))
                   << ' ' << num(r.analytic->eigenvalue(static_cast<int>(k))) << '\n';
      }
      written.push_back(w.path());
    }
    if (r.waveforms) {
      Writer w(dir / "waveforms.dat");
      const auto& wf = *r.waveforms;
      w.stream() << "# m";
      for (std::size_t k = 0; k < wf.numeric.size(); ++k) w.stream() << " numeric_" << k;
      for (std::size_t k = 0; k < wf.analytic.size(); ++k) w.stream() << " analytic_" << k;
      w.stream() << '\n';
      for (std::size_t i = 0; i < wf.index.size(); ++i) {
        w.stream() << num(wf.index[i]);
        for (const auto& series : wf.numeric) w.stream() << ' ' << num(series[i]);
        for (const auto& series : wf.analytic) w.stream() << ' ' << num(series[i]);
        w.stream() << '\n';
      }
      written.push_back(w.path());
    }
    if (!r.sweep.empty()) {
      Writer w(dir / "lambda0_length.dat");
      w.stream() << "# length_mm product_numeric_mm product_analytic_mm\n";
      for (const auto& s : r.sweep) {
        w.stream() << num(s.length * 1e3) << ' ' << num(s.product_numeric * 1e3) << ' '
                   << num(s.product_analytic * 1e3) << '\n';
      }
      written.push_back(w.path());
    }
    if (!r.variance_curve_db.empty()) {
      Writer w(dir / "variance_vs_k.dat");
      w.stream() << "# k best_quadrature_db\n";
      for (std::size_t k = 0; k < r.variance_curve_db.size(); ++k) {
        w.stream() << k << ' ' << num(r.variance_curve_db[k]) << '\n';
      }
      written.push_back(w.path());
    }
    if (r.matrix_preview) {
      Writer w(dir / "matrix.dat");
      const auto& p = *r.matrix_preview;
      w.stream() << "# m q value (scaled indices, stride " << p.stride << ")\n";
      for (std::size_t i = 0; i < p.index.size(); ++i) {
        for (std::size_t j = 0; j < p.index.size(); ++j) {
          w.stream() << p.index[i] << ' ' << p.index[j] << ' ' << num(p.values[i][j]) << '\n';
        }
        w.stream() << '\n';
      }
      written.push_back(w.path());
    }
  }
  return written;
}

}  // namespace supermode::cli
