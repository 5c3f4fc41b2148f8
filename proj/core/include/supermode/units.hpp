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

#include <string_view>

namespace supermode::units {

enum class Dimension { dimensionless, time, length, angular_frequency, irradiance };

const char* to_string(Dimension d);

// Parses "100fs", "0.4um", "75MHz", "14MW/cm2" or a plain number (SI) into SI.
// Frequencies given in Hz are ordinary frequencies and are returned as 2*pi*f;
// "rad/s" is taken as already angular. Throws std::invalid_argument.
double parse_quantity(std::string_view text, Dimension expected);

}  // namespace supermode::units
