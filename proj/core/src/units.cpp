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

#include "supermode/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <numbers>
#include <stdexcept>
#include <string>

namespace supermode::units {

namespace {

struct Suffix {
  std::string_view text;
  Dimension dim;
  double factor;
};

constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr std::array<Suffix, 22> suffixes{{
    {"fs", Dimension::time, 1e-15},
    {"ps", Dimension::time, 1e-12},
    {"ns", Dimension::time, 1e-9},
    {"us", Dimension::time, 1e-6},
    {"s", Dimension::time, 1.0},
    {"nm", Dimension::length, 1e-9},
    {"um", Dimension::length, 1e-6},
    {"\xC2\xB5m", Dimension::length, 1e-6},
    {"mm", Dimension::length, 1e-3},
    {"cm", Dimension::length, 1e-2},
    {"m", Dimension::length, 1.0},
    {"Hz", Dimension::angular_frequency, two_pi},
    {"kHz", Dimension::angular_frequency, two_pi * 1e3},
    {"MHz", Dimension::angular_frequency, two_pi * 1e6},
    {"GHz", Dimension::angular_frequency, two_pi * 1e9},
    {"rad/s", Dimension::angular_frequency, 1.0},
    {"W/m2", Dimension::irradiance, 1.0},
    {"W/cm2", Dimension::irradiance, 1e4},
    {"kW/cm2", Dimension::irradiance, 1e7},
    {"MW/cm2", Dimension::irradiance, 1e10},
    {"GW/cm2", Dimension::irradiance, 1e13},
    {"%", Dimension::dimensionless, 1e-2},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* to_string(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::time: return "time";
    case Dimension::length: return "length";
    case Dimension::angular_frequency: return "angular frequency";
    case Dimension::irradiance: return "irradiance";
  }
  return "?";
}

double parse_quantity(std::string_view text, Dimension expected) {
  std::string_view s = trim(text);
  double value = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end == s.data()) {
    throw std::invalid_argument("'" + std::string(text) + "' does not start with a number");
  }
  std::string_view unit = trim(std::string_view(end, static_cast<std::size_t>(s.data() + s.size() - end)));
  if (unit.empty()) return value;
  for (const auto& suf : suffixes) {
    if (suf.text != unit) continue;
    if (suf.dim != expected) {
      throw std::invalid_argument("unit '" + std::string(unit) + "' is a " + to_string(suf.dim) +
                                  ", expected " + to_string(expected));
    }
    return value * suf.factor;
  }
  throw std::invalid_argument("unknown unit '" + std::string(unit) + "'");
}

}  // namespace supermode::units
