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

#include "lapack_eigen.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "supermode/errors.hpp"

extern "C" {
void dsytrd_(const char* uplo, const int* n, double* a, const int* lda, double* d, double* e, double* tau,
             double* work, const int* lwork, int* info, std::size_t uplo_len);
void dsterf_(const int* n, double* d, double* e, int* info);
void dstemr_(const char* jobz, const char* range, const int* n, double* d, double* e, const double* vl,
             const double* vu, const int* il, const int* iu, int* m, double* w, double* z, const int* ldz,
             const int* nzc, int* isuppz, int* tryrac, double* work, const int* lwork, int* iwork,
             const int* liwork, int* info, std::size_t jobz_len, std::size_t range_len);
}

namespace supermode::detail {

namespace {

struct Tridiagonal {
  Eigen::MatrixXd reflectors;
  std::vector<double> d, e, tau;
};

void check(int info, const char* routine) {
  if (info != 0) throw ConvergenceFailure(std::string(routine) + " failed with info=" + std::to_string(info));
}

Tridiagonal reduce(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  Tridiagonal t;
  t.reflectors = a;
  t.d.resize(n);
  t.e.resize(std::max(n - 1, 1));
  t.tau.resize(std::max(n - 1, 1));
  int info = 0;
  int lwork = -1;
  double query = 0.0;
  dsytrd_("L", &n, t.reflectors.data(), &n, t.d.data(), t.e.data(), t.tau.data(), &query, &lwork, &info, 1);
  check(info, "dsytrd");
  lwork = static_cast<int>(query);
  std::vector<double> work(static_cast<std::size_t>(lwork));
  dsytrd_("L", &n, t.reflectors.data(), &n, t.d.data(), t.e.data(), t.tau.data(), work.data(), &lwork, &info,
          1);
  check(info, "dsytrd");
  return t;
}

// Eigenpairs il..iu (1-based, ascending) of the tridiagonal matrix.
void tridiagonal_vectors(const Tridiagonal& t, int il, int iu, std::vector<double>& w, Eigen::MatrixXd& z) {
  const int n = static_cast<int>(t.d.size());
  std::vector<double> d = t.d;
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::copy(t.e.begin(), t.e.begin() + (n - 1), e.begin());
  const int count = iu - il + 1;
  w.assign(static_cast<std::size_t>(n), 0.0);
  z.resize(n, count);
  std::vector<int> isuppz(static_cast<std::size_t>(2 * count));
  int m = 0, info = 0, tryrac = 1;
  const double vl = 0.0, vu = 0.0;
  int lwork = -1, liwork = -1, iquery = 0;
  double query = 0.0;
  dstemr_("V", "I", &n, d.data(), e.data(), &vl, &vu, &il, &iu, &m, w.data(), z.data(), &n, &count,
          isuppz.data(), &tryrac, &query, &lwork, &iquery, &liwork, &info, 1, 1);
  check(info, "dstemr");
  lwork = static_cast<int>(query);
  liwork = iquery;
  std::vector<double> work(static_cast<std::size_t>(lwork));
  std::vector<int> iwork(static_cast<std::size_t>(liwork));
  tryrac = 1;
  dstemr_("V", "I", &n, d.data(), e.data(), &vl, &vu, &il, &iu, &m, w.data(), z.data(), &n, &count,
          isuppz.data(), &tryrac, work.data(), &lwork, iwork.data(), &liwork, &info, 1, 1);
  check(info, "dstemr");
  if (m != count) throw ConvergenceFailure("dstemr returned fewer eigenpairs than requested");
  w.resize(static_cast<std::size_t>(m));
}

// OpenBLAS's blocked dormtr returns wrong results past n ~ 150, so the
// reflectors from dsytrd are applied through Eigen instead.
void back_transform(const Tridiagonal& t, Eigen::MatrixXd& z) {
  const Eigen::Index n = z.rows();
  if (z.cols() == 0 || n < 2) return;
  const Eigen::Map<const Eigen::VectorXd> tau(t.tau.data(), n - 1);
  const auto q = Eigen::HouseholderSequence<Eigen::MatrixXd, Eigen::Map<const Eigen::VectorXd>>(t.reflectors, tau)
                     .setLength(n - 1)
                     .setShift(1);
  z.applyOnTheLeft(q);
}

std::vector<double> eigenvalues_of(const Tridiagonal& t) {
  const int n = static_cast<int>(t.d.size());
  std::vector<double> d = t.d;
  std::vector<double> e = t.e;
  int info = 0;
  dsterf_(&n, d.data(), e.data(), &info);
  check(info, "dsterf");
  return d;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return {};
  return eigenvalues_of(reduce(a));
}

TridiagonalEigen symmetric_eigen(const Eigen::MatrixXd& a, const Selector& select) {
  const int n = static_cast<int>(a.rows());
  TridiagonalEigen out;
  if (n == 0) return out;
  const Tridiagonal t = reduce(a);
  out.all_values = eigenvalues_of(t);
  auto [n_low, n_high] = select(out.all_values);

  n_low = std::clamp(n_low, 0, n);
  n_high = std::clamp(n_high, 0, n - n_low);
  Eigen::MatrixXd z(n, n_low + n_high);
  std::vector<double> w;
  Eigen::MatrixXd block;
  if (n_low > 0) {
    tridiagonal_vectors(t, 1, n_low, w, block);
    z.leftCols(n_low) = block;
    for (int i = 0; i < n_low; ++i) {
      out.values.push_back(w[static_cast<std::size_t>(i)]);
      out.indices.push_back(i);
    }
  }
  if (n_high > 0) {
    tridiagonal_vectors(t, n - n_high + 1, n, w, block);
    z.rightCols(n_high) = block;
    for (int i = 0; i < n_high; ++i) {
      out.values.push_back(w[static_cast<std::size_t>(i)]);
      out.indices.push_back(n - n_high + i);
    }
  }
  back_transform(t, z);
  out.vectors = std::move(z);
  return out;
}

}  // namespace supermode::detail
