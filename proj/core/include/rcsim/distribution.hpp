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

#ifndef RCSIM_DISTRIBUTION_HPP
#define RCSIM_DISTRIBUTION_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rcsim/rng.hpp"

namespace rcsim {

/// Explicit probability vector over the bitstrings of a small region.
/// Index convention: the region's first bit is the most significant bit of
/// the table index, so index = sum_j b_j * 2^(m-1-j).
struct DistributionTable {
  int num_bits = 0;
  Eigen::VectorXd probs;

  DistributionTable() = default;
  DistributionTable(int bits, Eigen::VectorXd p);

  int size() const { return 1 << num_bits; }
  double operator()(uint32_t index) const { return probs(index); }

  /// Validates nonnegativity and normalization to 1e-12.
  void validate() const;

  static int bit_of(uint32_t index, int position, int num_bits) {
    return (index >> (num_bits - 1 - position)) & 1;
  }
};

/// Marginal over the given (ascending) bit positions.
DistributionTable marginal(const DistributionTable& table, const std::vector<int>& positions);

/// Conditional over `targets` given the assignment `given_bits` on `given`.
/// Throws std::domain_error on a zero-probability condition.
DistributionTable conditional(const DistributionTable& table, const std::vector<int>& targets,
                              const std::vector<int>& given, uint32_t given_bits);

/// Shannon entropy in bits with 0 log 0 = 0.
double entropy_bits(const DistributionTable& table);

/// I(X:Z|Y) = H(XY) + H(YZ) - H(XYZ) - H(Y) from plug-in marginal entropies.
/// X, Y, Z are disjoint bit-position sets; positions left out of all three
/// are marginalized away.
double exact_cmi(const DistributionTable& table, const std::vector<int>& x,
                 const std::vector<int>& y, const std::vector<int>& z);

/// l1 norm of the difference (twice the total variation distance).
double l1_distance(const DistributionTable& p, const DistributionTable& q);

/// || P_XYZ - P_X P_{Y|X} P_{Z|Y} ||_1 with zero-probability conditionals
/// taken uniform (they carry zero weight in the product).
double markov_residual(const DistributionTable& table, const std::vector<int>& x,
                       const std::vector<int>& y, const std::vector<int>& z);

/// Draws one index from the table.
uint32_t sample_index(const DistributionTable& table, CounterRng& rng);

}  // namespace rcsim

#endif
