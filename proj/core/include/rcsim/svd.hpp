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

#ifndef RCSIM_SVD_HPP
#define RCSIM_SVD_HPP

#include <Eigen/Dense>

namespace rcsim {

struct ThinSvd {
  Eigen::MatrixXcd u;        // m x k
  Eigen::VectorXd singular;  // k, descending
  Eigen::MatrixXcd vt;       // k x n
};

/// Economy SVD via LAPACK's divide-and-conquer driver. Throws
/// std::runtime_error with the failing site context on non-convergence.
ThinSvd thin_svd(const Eigen::MatrixXcd& a);

}  // namespace rcsim

#endif
