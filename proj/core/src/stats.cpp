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

#include "rcsim/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rcsim {

MeanStderr mean_stderr(const std::vector<double>& values) {
  MeanStderr out;
  out.count = static_cast<int>(values.size());
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stderr_ = std::sqrt(ss / (values.size() - 1.0) / values.size());
  }
  return out;
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("linear_fit needs >= 2 paired points");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  double vx = sxx - sx * sx / n;
  double vy = syy - sy * sy / n;
  double cxy = sxy - sx * sy / n;
  if (vx <= 0.0) throw std::invalid_argument("linear_fit: degenerate x values");
  LinearFit f;
  f.slope = cxy / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r2 = (vy <= 0.0) ? 1.0 : (cxy * cxy) / (vx * vy);
  return f;
}

namespace {

std::vector<double> ranks_of(const std::vector<double>& v) {
  const size_t n = v.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    double r = 0.5 * (i + j) + 1.0;  // average rank for ties
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    saa += a[i] * a[i];
    sbb += b[i] * b[i];
    sab += a[i] * b[i];
  }
  double va = saa - sa * sa / n;
  double vb = sbb - sb * sb / n;
  double cab = sab - sa * sb / n;
  if (va <= 0.0 || vb <= 0.0) return 0.0;
  return cab / std::sqrt(va * vb);
}

}  // namespace

double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("spearman_rho needs >= 2 paired points");
  }
  return pearson(ranks_of(xs), ranks_of(ys));
}

double spearman_pvalue_negative(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  if (n != ys.size() || n < 3) throw std::invalid_argument("need >= 3 paired points");
  if (n > 8) throw std::invalid_argument("exact permutation test limited to n <= 8");
  double observed = spearman_rho(xs, ys);
  auto ry = ranks_of(ys);
  std::vector<double> rx = ranks_of(xs);
  std::sort(rx.begin(), rx.end());
  int64_t le = 0, total = 0;
  do {
    double rho = pearson(rx, ry);
    if (rho <= observed + 1e-12) ++le;
    ++total;
  } while (std::next_permutation(rx.begin(), rx.end()));
  return static_cast<double>(le) / static_cast<double>(total);
}

double chi_square_sf(double statistic, int dof) {
  if (dof <= 0) throw std::invalid_argument("dof must be positive");
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_gof(const std::vector<int64_t>& counts,
                               const std::vector<double>& expected_probs, double min_expected) {
  if (counts.size() != expected_probs.size() || counts.empty()) {
    throw std::invalid_argument("counts/expected size mismatch");
  }
  int64_t total = std::accumulate(counts.begin(), counts.end(), int64_t{0});
  if (total <= 0) throw std::invalid_argument("no observations");

  // Sort bins by expected count and pool the small ones into the next bin up.
  std::vector<size_t> order(counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return expected_probs[a] < expected_probs[b];
  });
  std::vector<double> exp_pooled;
  std::vector<int64_t> obs_pooled;
  double e_acc = 0.0;
  int64_t o_acc = 0;
  for (size_t idx : order) {
    e_acc += expected_probs[idx] * total;
    o_acc += counts[idx];
    if (e_acc >= min_expected) {
      exp_pooled.push_back(e_acc);
      obs_pooled.push_back(o_acc);
      e_acc = 0.0;
      o_acc = 0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0) {
    if (exp_pooled.empty()) {
      exp_pooled.push_back(e_acc);
      obs_pooled.push_back(o_acc);
    } else {
      exp_pooled.back() += e_acc;
      obs_pooled.back() += o_acc;
    }
  }

  ChiSquareResult r;
  r.pooled_bins = static_cast<int>(exp_pooled.size());
  if (r.pooled_bins < 2) {
    r.dof = 0;
    r.p_value = 1.0;
    return r;
  }
  for (size_t i = 0; i < exp_pooled.size(); ++i) {
    double d = obs_pooled[i] - exp_pooled[i];
    r.statistic += d * d / exp_pooled[i];
  }
  r.dof = r.pooled_bins - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

}  // namespace rcsim
