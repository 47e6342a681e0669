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

#ifndef RCSIM_STATS_HPP
#define RCSIM_STATS_HPP

#include <cstdint>
#include <vector>

namespace rcsim {

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
  int count = 0;
};

MeanStderr mean_stderr(const std::vector<double>& values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = a x + b; needs at least two points.
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/// Spearman rank correlation. Average ranks are used for ties.
double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys);

/// Exact one-sided permutation p-value for H1: rho < 0 (enumerates all rank
/// permutations; limited to n <= 8 points).
double spearman_pvalue_negative(const std::vector<double>& xs, const std::vector<double>& ys);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
  int pooled_bins = 0;
};

/// Pearson goodness-of-fit of observed counts against expected probabilities.
/// Bins with expected counts below min_expected are pooled (smallest first)
/// so the chi-square approximation stays valid.
ChiSquareResult chi_square_gof(const std::vector<int64_t>& counts,
                               const std::vector<double>& expected_probs,
                               double min_expected = 5.0);

/// Upper tail of the chi-square distribution with dof degrees of freedom.
double chi_square_sf(double statistic, int dof);

}  // namespace rcsim

#endif
