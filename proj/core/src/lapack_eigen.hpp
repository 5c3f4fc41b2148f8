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

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

namespace supermode::detail {

// Symmetric eigenvalues in ascending order, plus selected eigenvectors.
// Reduces once to tridiagonal form, computes every eigenvalue, then asks
// `select` for (n_low, n_high): eigenvectors are computed only for the index
// ranges [0, n_low) and [n - n_high, n) of the ascending spectrum.
struct TridiagonalEigen {
  std::vector<double> all_values;  // ascending
  std::vector<double> values;      // selected, ascending
  std::vector<int> indices;        // positions of `values` within all_values
  Eigen::MatrixXd vectors;         // n x values.size()
};

using Selector = std::function<std::pair<int, int>(const std::vector<double>&)>;

TridiagonalEigen symmetric_eigen(const Eigen::MatrixXd& a, const Selector& select);

// All eigenvalues only.
std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a);

}  // namespace supermode::detail
