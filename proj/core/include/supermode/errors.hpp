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

#include <stdexcept>
#include <string>

namespace supermode {

// Config errors map to exit code 2, numeric errors to exit code 3.
enum class ErrorKind { config, numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& message, int line = 0);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

class UnknownPreset : public Error {
 public:
  explicit UnknownPreset(const std::string& name);
};

class IncompletePreset : public Error {
 public:
  explicit IncompletePreset(const std::string& name);
};

class ConflictingPump : public Error {
 public:
  ConflictingPump();
};

class MissingTp : public Error {
 public:
  MissingTp();
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what);
};

class GridTooNarrow : public Error {
 public:
  GridTooNarrow(int half_width, double required);
};

class ConvergenceFailure : public Error {
 public:
  explicit ConvergenceFailure(const std::string& what);
};

class ThresholdSingularity : public Error {
 public:
  ThresholdSingularity();
};

class WindowMismatch : public Error {
 public:
  explicit WindowMismatch(const std::string& what);
};

// Wraps a module error with the name of the analysis that raised it.
class AnalysisError : public Error {
 public:
  AnalysisError(const std::string& analysis, const Error& cause);
  const std::string& analysis() const noexcept { return analysis_; }

 private:
  std::string analysis_;
};

}  // namespace supermode
