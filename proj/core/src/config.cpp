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

#include "supermode/config.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "supermode/coupling.hpp"
#include "supermode/errors.hpp"
#include "supermode/units.hpp"

namespace supermode::cli {

namespace {

using json = nlohmann::ordered_json;
using units::Dimension;

// Object view that tracks which keys were read, so leftovers can be rejected.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ParseError(path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) throw ParseError(at(key), "missing required field");
    return *v;
  }

  std::optional<double> quantity(const std::string& key, Dimension dim) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    return to_quantity(*v, at(key), dim);
  }

  double required_quantity(const std::string& key, Dimension dim) {
    return to_quantity(require(key), at(key), dim);
  }

  std::optional<int> integer(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number_integer()) throw ParseError(at(key), "expected an integer");
    return v->get<int>();
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_boolean()) throw ParseError(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_string()) throw ParseError(at(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, Dimension dim, std::vector<double> fallback) {
    const json* v = find(key);
    if (v == nullptr) return fallback;
    if (!v->is_array()) throw ParseError(at(key), "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      out.push_back(to_quantity((*v)[i], at(key) + "[" + std::to_string(i) + "]", dim));
    }
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ParseError(at(it.key()), "unknown field");
    }
  }

  static double to_quantity(const json& v, const std::string& where, Dimension dim) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string()) throw ParseError(where, "expected a number or a quantity string");
    try {
      return units::parse_quantity(v.get<std::string>(), dim);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

CrystalDispersion parse_crystal(Fields f) {
  CrystalDispersion c;
  bool complete = false;
  std::string preset_name;
  if (auto preset = f.string("preset")) {
    const auto& p = find_preset(*preset);
    preset_name = p.name;
    if (p.values) {
      c = *p.values;
      complete = true;
    }
  }
  struct Slot {
    const char* key;
    double* target;
  };
  const Slot slots[] = {{"kp_prime", &c.kp_prime},   {"kp_double_prime", &c.kp_double_prime},
                        {"ks_prime", &c.ks_prime},   {"ks_double_prime", &c.ks_double_prime},
                        {"chi", &c.chi},             {"n0", &c.n0}};
  for (const auto& s : slots) {
    if (auto v = f.quantity(s.key, Dimension::dimensionless)) {
      *s.target = *v;
    } else if (!complete) {
      if (!preset_name.empty()) throw IncompletePreset(preset_name);
      throw ParseError(f.at(s.key), "missing required field");
    }
  }
  c.length = f.required_quantity("length", Dimension::length);
  if (auto label = f.string("label")) {
    c.label = *label;
  } else if (!preset_name.empty()) {
    c.label = preset_name;
  } else {
    c.label = "custom";
  }
  f.finish();
  return c;
}

CavityGeometry parse_geometry(const std::string& s, const std::string& where) {
  if (s == "ring") return CavityGeometry::ring;
  if (s == "linear") return CavityGeometry::linear;
  throw ParseError(where, "geometry must be 'ring' or 'linear'");
}

Resonance parse_resonance(const std::string& s, const std::string& where) {
  if (s == "singly") return Resonance::singly;
  if (s == "doubly") return Resonance::doubly;
  throw ParseError(where, "resonance must be 'singly' or 'doubly'");
}

SpopoConfig parse_spopo(Fields f) {
  SpopoConfig s;
  s.free_spectral_range = f.required_quantity("free_spectral_range", Dimension::angular_frequency);
  s.pump_pulse_duration = f.required_quantity("pump_pulse_duration", Dimension::time);
  s.pump_center_wavelength = f.required_quantity("pump_center_wavelength", Dimension::length);
  s.signal_mirror_transmission = f.required_quantity("signal_mirror_transmission", Dimension::dimensionless);
  s.pump_mirror_transmission = f.quantity("pump_mirror_transmission", Dimension::dimensionless);
  if (auto g = f.string("geometry")) s.geometry = parse_geometry(*g, f.at("geometry"));
  if (auto r = f.string("resonance")) s.resonance = parse_resonance(*r, f.at("resonance"));
  s.pump_waist = f.required_quantity("pump_waist", Dimension::length);
  s.signal_waist = f.quantity("signal_waist", Dimension::length);
  s.pump_ratio = f.quantity("pump_ratio", Dimension::dimensionless);
  s.pump_irradiance = f.quantity("pump_irradiance", Dimension::irradiance);
  f.finish();
  return s;
}

LoSpec parse_lo(Fields f) {
  LoSpec lo;
  const std::string kind = f.string("kind").value_or("gauss-hermite");
  if (kind == "gauss-hermite") {
    lo.kind = LoSpec::Kind::gauss_hermite;
    lo.width = f.required_quantity("width", Dimension::dimensionless);
  } else if (kind == "supermode") {
    lo.kind = LoSpec::Kind::supermode;
  } else {
    throw ParseError(f.at("kind"), "LO kind must be 'gauss-hermite' or 'supermode'");
  }
  lo.order = f.integer("order").value_or(0);
  if (const json* p = f.find("phase")) {
    if (p->is_string() && p->get<std::string>() == "best") {
      lo.phase = std::nullopt;
    } else {
      lo.phase = Fields::to_quantity(*p, f.at("phase"), Dimension::dimensionless);
    }
  }
  f.finish();
  return lo;
}

LoObjective parse_objective(const std::string& s, const std::string& where) {
  if (s == "minimum-variance") return LoObjective::minimum_variance;
  if (s == "maximum-overlap") return LoObjective::maximum_overlap;
  throw ParseError(where, "objective must be 'minimum-variance' or 'maximum-overlap'");
}

Analysis parse_analysis(Fields f) {
  const auto type = f.string("type");
  if (!type) throw ParseError(f.at("type"), "missing required field");
  Analysis out;
  if (*type == "diagonalize") {
    DiagonalizeAnalysis a;
    a.waveform_modes = f.integer("waveform_modes").value_or(a.waveform_modes);
    a.export_matrix = f.boolean("export_matrix").value_or(false);
    out = a;
  } else if (*type == "threshold") {
    out = ThresholdAnalysis{};
  } else if (*type == "squeeze") {
    SqueezeAnalysis a;
    a.pump_ratio = f.quantity("pump_ratio", Dimension::dimensionless);
    a.noise_frequencies = f.numbers("noise_frequencies", Dimension::dimensionless, a.noise_frequencies);
    a.bounds_db = f.numbers("bounds_db", Dimension::dimensionless, a.bounds_db);
    a.modes = f.integer("modes").value_or(a.modes);
    if (const json* los = f.find("los")) {
      if (!los->is_array()) throw ParseError(f.at("los"), "expected an array");
      for (std::size_t i = 0; i < los->size(); ++i) {
        a.los.push_back(parse_lo(Fields((*los)[i], f.at("los") + "[" + std::to_string(i) + "]")));
      }
    }
    out = a;
  } else if (*type == "count") {
    CountAnalysis a;
    a.pump_ratio = f.quantity("pump_ratio", Dimension::dimensionless);
    a.noise_frequency = f.quantity("noise_frequency", Dimension::dimensionless).value_or(0.0);
    a.bounds_db = f.numbers("bounds_db", Dimension::dimensionless, a.bounds_db);
    if (const json* bands = f.find("bands_db")) {
      if (!bands->is_array()) throw ParseError(f.at("bands_db"), "expected an array of [lower, upper] pairs");
      for (std::size_t i = 0; i < bands->size(); ++i) {
        const auto& b = (*bands)[i];
        const std::string where = f.at("bands_db") + "[" + std::to_string(i) + "]";
        if (!b.is_array() || b.size() != 2) throw ParseError(where, "expected [lower, upper]");
        a.bands_db.emplace_back(Fields::to_quantity(b[0], where, Dimension::dimensionless),
                                Fields::to_quantity(b[1], where, Dimension::dimensionless));
      }
    }
    out = a;
  } else if (*type == "lo-optimize") {
    LoOptimizeAnalysis a;
    a.pump_ratio = f.quantity("pump_ratio", Dimension::dimensionless);
    a.noise_frequency = f.quantity("noise_frequency", Dimension::dimensionless).value_or(0.0);
    if (const json* orders = f.find("orders")) {
      if (!orders->is_array()) throw ParseError(f.at("orders"), "expected an array of integers");
      a.orders.clear();
      for (const auto& o : *orders) {
        if (!o.is_number_integer()) throw ParseError(f.at("orders"), "expected an array of integers");
        a.orders.push_back(o.get<int>());
      }
    }
    if (auto obj = f.string("objective")) a.objective = parse_objective(*obj, f.at("objective"));
    out = a;
  } else if (*type == "length-sweep") {
    LengthSweepAnalysis a;
    a.lengths = f.numbers("lengths", Dimension::length, {});
    if (a.lengths.empty()) throw ParseError(f.at("lengths"), "missing required field");
    out = a;
  } else if (*type == "compare-analytic") {
    CompareAnalyticAnalysis a;
    a.k_max = f.integer("k_max").value_or(a.k_max);
    out = a;
  } else {
    throw ParseError(f.at("type"), "unknown analysis '" + *type + "'");
  }
  f.finish();
  return out;
}

int line_of(const std::string& text, std::size_t byte) {
  const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size()));
  return 1 + static_cast<int>(std::count(text.begin(), end, '\n'));
}

json lo_to_json(const LoSpec& lo) {
  json j;
  j["kind"] = lo.kind == LoSpec::Kind::gauss_hermite ? "gauss-hermite" : "supermode";
  j["order"] = lo.order;
  if (lo.kind == LoSpec::Kind::gauss_hermite) j["width"] = lo.width;
  j["phase"] = lo.phase ? json(*lo.phase) : json("best");
  return j;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json analysis_to_json(const Analysis& a) {
  json j;
  j["type"] = analysis_name(a);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DiagonalizeAnalysis>) {
          j["waveform_modes"] = x.waveform_modes;
          j["export_matrix"] = x.export_matrix;
        } else if constexpr (std::is_same_v<T, SqueezeAnalysis>) {
          j["pump_ratio"] = optional_number(x.pump_ratio);
          j["noise_frequencies"] = x.noise_frequencies;
          j["bounds_db"] = x.bounds_db;
          j["modes"] = x.modes;
          j["los"] = json::array();
          for (const auto& lo : x.los) j["los"].push_back(lo_to_json(lo));
        } else if constexpr (std::is_same_v<T, CountAnalysis>) {
          j["pump_ratio"] = optional_number(x.pump_ratio);
          j["noise_frequency"] = x.noise_frequency;
          j["bounds_db"] = x.bounds_db;
          j["bands_db"] = json::array();
          for (const auto& [lo, hi] : x.bands_db) j["bands_db"].push_back({lo, hi});
        } else if constexpr (std::is_same_v<T, LoOptimizeAnalysis>) {
          j["pump_ratio"] = optional_number(x.pump_ratio);
          j["noise_frequency"] = x.noise_frequency;
          j["orders"] = x.orders;
          j["objective"] = to_string(x.objective);
        } else if constexpr (std::is_same_v<T, LengthSweepAnalysis>) {
          j["lengths"] = x.lengths;
        } else if constexpr (std::is_same_v<T, CompareAnalyticAnalysis>) {
          j["k_max"] = x.k_max;
        }
      },
      a);
  return j;
}

RunConfig parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", e.what(), line_of(text, e.byte));
  }
  Fields root(doc, "");
  RunConfig cfg;
  cfg.crystal = parse_crystal(Fields(root.require("crystal"), "crystal"));
  cfg.spopo = parse_spopo(Fields(root.require("spopo"), "spopo"));
  cfg.crystal.validate();
  cfg.spopo.validate();

  const json* numerics = root.find("numerics");
  const json empty = json::object();
  Fields n(numerics ? *numerics : empty, "numerics");
  if (auto k = n.quantity("kappa", Dimension::dimensionless)) {
    cfg.numerics.kappa = *k;
  } else {
    cfg.numerics.kappa = default_kappa(gaussian_validity(cfg.crystal, cfg.spopo).regime);
  }
  cfg.numerics.grid_half_width = n.integer("grid_half_width");
  cfg.numerics.epsilon_significant =
      n.quantity("epsilon_significant", Dimension::dimensionless).value_or(cfg.numerics.epsilon_significant);
  cfg.numerics.max_half_width = n.integer("max_half_width").value_or(cfg.numerics.max_half_width);
  n.finish();
  if (!(cfg.numerics.kappa >= 1.0)) throw ParseError("numerics.kappa", "kappa must be >= 1");
  if (!(cfg.numerics.epsilon_significant > 0.0 && cfg.numerics.epsilon_significant < 1.0)) {
    throw ParseError("numerics.epsilon_significant", "must lie in (0, 1)");
  }

  if (const json* analyses = root.find("analyses")) {
    if (!analyses->is_array()) throw ParseError("analyses", "expected an array");
    for (std::size_t i = 0; i < analyses->size(); ++i) {
      cfg.analyses.push_back(parse_analysis(Fields((*analyses)[i], "analyses[" + std::to_string(i) + "]")));
    }
  }
  root.finish();
  return cfg;
}

}  // namespace

const char* analysis_name(const Analysis& a) {
  static constexpr const char* names[] = {"diagonalize", "threshold",    "squeeze",         "count",
                                          "lo-optimize", "length-sweep", "compare-analytic"};
  return names[a.index()];
}

RunConfig parse_config_string(const std::string& text) { return parse_document(text); }

RunConfig parse_config(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_document(text);
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open '" + path.string() + "'");
  return parse_config(in);
}

std::string config_to_json(const RunConfig& config, int indent) {
  json j;
  const auto& c = config.crystal;
  j["crystal"] = {{"label", c.label},
                  {"kp_prime", c.kp_prime},
                  {"kp_double_prime", c.kp_double_prime},
                  {"ks_prime", c.ks_prime},
                  {"ks_double_prime", c.ks_double_prime},
                  {"chi", c.chi},
                  {"n0", c.n0},
                  {"length", c.length}};
  const auto& s = config.spopo;
  j["spopo"] = {{"free_spectral_range", s.free_spectral_range},
                {"pump_pulse_duration", s.pump_pulse_duration},
                {"pump_center_wavelength", s.pump_center_wavelength},
                {"signal_mirror_transmission", s.signal_mirror_transmission},
                {"pump_mirror_transmission", optional_number(s.pump_mirror_transmission)},
                {"geometry", to_string(s.geometry)},
                {"resonance", to_string(s.resonance)},
                {"pump_waist", s.pump_waist},
                {"signal_waist", optional_number(s.signal_waist)},
                {"pump_ratio", optional_number(s.pump_ratio)},
                {"pump_irradiance", optional_number(s.pump_irradiance)}};
  const auto& n = config.numerics;
  j["numerics"] = {{"kappa", n.kappa},
                   {"grid_half_width", n.grid_half_width ? json(*n.grid_half_width) : json(nullptr)},
                   {"epsilon_significant", n.epsilon_significant},
                   {"max_half_width", n.max_half_width}};
  j["analyses"] = json::array();
  for (const auto& a : config.analyses) j["analyses"].push_back(analysis_to_json(a));
  return j.dump(indent);
}

}  // namespace supermode::cli
