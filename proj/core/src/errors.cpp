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

#include "supermode/errors.hpp"

#include <sstream>

namespace supermode {

Error::Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

namespace {

std::string parse_message(const std::string& field, const std::string& message, int line) {
  std::ostringstream os;
  os << "parse error";
  if (line > 0) os << " at line " << line;
  if (!field.empty()) os << " in '" << field << "'";
  os << ": " << message;
  return os.str();
}

}  // namespace

ParseError::ParseError(const std::string& field, const std::string& message, int line)
    : Error(ErrorKind::config, parse_message(field, message, line)), field_(field), line_(line) {}

UnknownPreset::UnknownPreset(const std::string& name)
    : Error(ErrorKind::config, "unknown crystal preset '" + name + "'") {}

IncompletePreset::IncompletePreset(const std::string& name)
    : Error(ErrorKind::config,
            "crystal preset '" + name + "' ships without values; supply every crystal field inline") {}

ConflictingPump::ConflictingPump()
    : Error(ErrorKind::config, "exactly one of pump_ratio and pump_irradiance must be given") {}

MissingTp::MissingTp()
    : Error(ErrorKind::config, "doubly resonant cavity requires pump_mirror_transmission") {}

InvalidParameter::InvalidParameter(const std::string& what) : Error(ErrorKind::config, what) {}

GridTooNarrow::GridTooNarrow(int half_width, double required)
    : Error(ErrorKind::numeric, "grid half-width " + std::to_string(half_width) +
                                    " is below the required " + std::to_string(required)) {}

ConvergenceFailure::ConvergenceFailure(const std::string& what) : Error(ErrorKind::numeric, what) {}

ThresholdSingularity::ThresholdSingularity()
    : Error(ErrorKind::numeric, "quadrature transfer is singular (on threshold at zero frequency)") {}

WindowMismatch::WindowMismatch(const std::string& what) : Error(ErrorKind::numeric, what) {}

AnalysisError::AnalysisError(const std::string& analysis, const Error& cause)
    : Error(cause.kind(), analysis + ": " + cause.what()), analysis_(analysis) {}

}  // namespace supermode
