// Copyright 2026 The rcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rcsim/svd.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace rcsim {

ThinSvd thin_svd(const Eigen::MatrixXcd& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const int k = std::min(m, n);
  ThinSvd out;
  out.u.resize(m, k);
  out.singular.resize(k);
  out.vt.resize(k, n);
  Eigen::MatrixXcd work = a;  // zgesdd destroys the input
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, out.singular.data(),
                            out.u.data(), m, out.vt.data(), k);
  if (info != 0) {
    // Rare non-convergence; fall back to the slower one-sided Jacobi.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
      throw std::runtime_error("SVD failed (zgesdd info=" + std::to_string(info) + ")");
    }
    out.u = svd.matrixU();
    out.singular = svd.singularValues();
    out.vt = svd.matrixV().adjoint();
  }
  return out;
}

}  // namespace rcsim
