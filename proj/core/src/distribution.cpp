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

#include "rcsim/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rcsim/errors.hpp"

namespace rcsim {

namespace {

// Packs the bits of `positions` (ascending) from a full-table index.
inline uint32_t extract_bits(uint32_t index, const std::vector<int>& positions, int num_bits) {
  uint32_t out = 0;
  for (int p : positions) {
    out = (out << 1) | static_cast<uint32_t>(DistributionTable::bit_of(index, p, num_bits));
  }
  return out;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

void check_positions(const DistributionTable& table, const std::vector<int>& positions) {
  for (size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 0 || positions[i] >= table.num_bits) {
      throw std::invalid_argument("bit position out of range");
    }
    if (i > 0 && positions[i] <= positions[i - 1]) {
      throw std::invalid_argument("bit positions must be strictly ascending");
    }
  }
}

void check_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    for (int y : b)
      if (x == y) throw std::invalid_argument("regions must be disjoint");
}

}  // namespace

DistributionTable::DistributionTable(int bits, Eigen::VectorXd p)
    : num_bits(bits), probs(std::move(p)) {
  if (bits < 0 || bits > 30) throw std::invalid_argument("table size out of range");
  if (probs.size() != (1LL << bits)) throw std::invalid_argument("table length mismatch");
}

void DistributionTable::validate() const {
  if (probs.minCoeff() < 0.0) throw integrity_error("negative probability in table");
  if (std::abs(probs.sum() - 1.0) > 1e-12) {
    throw integrity_error("table does not sum to 1");
  }
}

DistributionTable marginal(const DistributionTable& table, const std::vector<int>& positions) {
  check_positions(table, positions);
  const int m = static_cast<int>(positions.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(1 << m);
  for (uint32_t i = 0; i < static_cast<uint32_t>(table.size()); ++i) {
    out(extract_bits(i, positions, table.num_bits)) += table.probs(i);
  }
  return DistributionTable(m, std::move(out));
}

DistributionTable conditional(const DistributionTable& table, const std::vector<int>& targets,
                              const std::vector<int>& given, uint32_t given_bits) {
  check_positions(table, targets);
  check_positions(table, given);
  check_disjoint(targets, given);
  const int m = static_cast<int>(targets.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(1 << m);
  double norm = 0.0;
  for (uint32_t i = 0; i < static_cast<uint32_t>(table.size()); ++i) {
    if (extract_bits(i, given, table.num_bits) != given_bits) continue;
    double p = table.probs(i);
    out(extract_bits(i, targets, table.num_bits)) += p;
    norm += p;
  }
  if (norm <= 0.0) throw std::domain_error("conditioning on a zero-probability event");
  out /= norm;
  return DistributionTable(m, std::move(out));
}

double entropy_bits(const DistributionTable& table) {
  double h = 0.0;
  for (int i = 0; i < table.size(); ++i) {
    double p = table.probs(i);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double exact_cmi(const DistributionTable& table, const std::vector<int>& x,
                 const std::vector<int>& y, const std::vector<int>& z) {
  check_disjoint(x, y);
  check_disjoint(x, z);
  check_disjoint(y, z);
  double hxy = entropy_bits(marginal(table, sorted_union(x, y)));
  double hyz = entropy_bits(marginal(table, sorted_union(y, z)));
  double hxyz = entropy_bits(marginal(table, sorted_union(sorted_union(x, y), z)));
  double hy = entropy_bits(marginal(table, y));
  return hxy + hyz - hxyz - hy;
}

double l1_distance(const DistributionTable& p, const DistributionTable& q) {
  if (p.num_bits != q.num_bits) throw std::invalid_argument("table sizes differ");
  return (p.probs - q.probs).cwiseAbs().sum();
}

double markov_residual(const DistributionTable& table, const std::vector<int>& x,
                       const std::vector<int>& y, const std::vector<int>& z) {
  check_disjoint(x, y);
  check_disjoint(x, z);
  check_disjoint(y, z);
  auto xy = sorted_union(x, y);
  auto yz = sorted_union(y, z);
  auto xyz = sorted_union(xy, z);
  DistributionTable p_xyz = marginal(table, xyz);
  DistributionTable p_xy = marginal(table, xy);
  DistributionTable p_yz = marginal(table, yz);
  DistributionTable p_x = marginal(table, x);
  DistributionTable p_y = marginal(table, y);

  // Positions of x/y/z bits inside the packed xyz/xy/yz indices.
  auto positions_in = [](const std::vector<int>& sub, const std::vector<int>& super) {
    std::vector<int> out;
    for (int s : sub) {
      auto it = std::lower_bound(super.begin(), super.end(), s);
      out.push_back(static_cast<int>(it - super.begin()));
    }
    return out;
  };
  auto x_in_xyz = positions_in(x, xyz);
  auto y_in_xyz = positions_in(y, xyz);
  auto z_in_xyz = positions_in(z, xyz);
  auto x_in_xy = positions_in(x, xy);
  auto y_in_xy = positions_in(y, xy);
  auto y_in_yz = positions_in(y, yz);
  auto z_in_yz = positions_in(z, yz);

  auto pack = [](uint32_t full, const std::vector<int>& positions, int bits) {
    uint32_t out = 0;
    for (int p : positions)
      out = (out << 1) | static_cast<uint32_t>(DistributionTable::bit_of(full, p, bits));
    return out;
  };

  const int bits = p_xyz.num_bits;
  double residual = 0.0;
  for (uint32_t i = 0; i < static_cast<uint32_t>(p_xyz.size()); ++i) {
    uint32_t xb = pack(i, x_in_xyz, bits);
    uint32_t yb = pack(i, y_in_xyz, bits);
    uint32_t zb = pack(i, z_in_xyz, bits);
    double px = p_x.probs(xb);
    double q = 0.0;
    if (px > 0.0) {
      uint32_t xy_index = 0;
      // Recombine (x, y) bits in xy's ascending order.
      for (size_t k = 0, ix = 0, iy = 0; k < xy.size(); ++k) {
        int bit;
        if (ix < x.size() && x_in_xy[ix] == static_cast<int>(k)) {
          bit = (xb >> (x.size() - 1 - ix)) & 1;
          ++ix;
        } else {
          bit = (yb >> (y.size() - 1 - iy)) & 1;
          ++iy;
        }
        xy_index = (xy_index << 1) | static_cast<uint32_t>(bit);
      }
      double pxy = p_xy.probs(xy_index);
      double py = p_y.probs(yb);
      double p_y_given_x = pxy / px;
      double p_z_given_y;
      if (py > 0.0) {
        uint32_t yz_index = 0;
        for (size_t k = 0, iy = 0, iz = 0; k < yz.size(); ++k) {
          int bit;
          if (iy < y.size() && y_in_yz[iy] == static_cast<int>(k)) {
            bit = (yb >> (y.size() - 1 - iy)) & 1;
            ++iy;
          } else {
            bit = (zb >> (z.size() - 1 - iz)) & 1;
            ++iz;
          }
          yz_index = (yz_index << 1) | static_cast<uint32_t>(bit);
        }
        p_z_given_y = p_yz.probs(yz_index) / py;
      } else {
        p_z_given_y = 1.0 / static_cast<double>(1u << z.size());
      }
      q = px * p_y_given_x * p_z_given_y;
    }
    residual += std::abs(p_xyz.probs(i) - q);
  }
  return residual;
}

uint32_t sample_index(const DistributionTable& table, CounterRng& rng) {
  double u = rng.uniform_double() * table.probs.sum();
  double acc = 0.0;
  for (uint32_t i = 0; i + 1 < static_cast<uint32_t>(table.size()); ++i) {
    acc += table.probs(i);
    if (u < acc) return i;
  }
  return static_cast<uint32_t>(table.size() - 1);
}

}  // namespace rcsim
