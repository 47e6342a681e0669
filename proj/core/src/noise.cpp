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

#include "rcsim/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace rcsim {

namespace {

using Eigen::Matrix2cd;
using std::complex;

const complex<double> kI(0.0, 1.0);

Matrix2cd pauli_matrix(int p) {
  Matrix2cd m;
  switch (p) {
    case 0: m << 1, 0, 0, 1; break;           // I
    case 1: m << 0, 1, 1, 0; break;           // X
    case 2: m << 0, -kI, kI, 0; break;        // Y
    case 3: m << 1, 0, 0, -1; break;          // Z
    default: throw std::logic_error("bad pauli index");
  }
  return m;
}

}  // namespace

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::AmplitudeDamping: return "amplitude_damping";
    case NoiseKind::Depolarizing: return "depolarizing";
    case NoiseKind::HeraldedReset: return "heralded_reset";
    case NoiseKind::HeraldedDepolarizing: return "heralded_depolarizing";
  }
  throw std::logic_error("bad noise kind");
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "none") return NoiseKind::None;
  if (name == "amplitude_damping") return NoiseKind::AmplitudeDamping;
  if (name == "depolarizing") return NoiseKind::Depolarizing;
  if (name == "heralded_reset") return NoiseKind::HeraldedReset;
  if (name == "heralded_depolarizing") return NoiseKind::HeraldedDepolarizing;
  throw std::invalid_argument("unknown noise kind: " + name);
}

NoiseSpec::NoiseSpec(NoiseKind k, double g) : kind(k), gamma(k == NoiseKind::None ? 0.0 : g) {
  if (kind != NoiseKind::None && (g < 0.0 || g > 1.0)) {
    throw std::invalid_argument("noise rate must lie in [0, 1]");
  }
}

std::vector<Matrix2cd> kraus_operators(const NoiseSpec& noise) {
  const double g = noise.gamma;
  std::vector<Matrix2cd> ks;
  switch (noise.kind) {
    case NoiseKind::None: {
      ks.push_back(Matrix2cd::Identity());
      break;
    }
    case NoiseKind::AmplitudeDamping: {
      Matrix2cd k0, k1;
      k0 << 1, 0, 0, std::sqrt(1.0 - g);
      k1 << 0, std::sqrt(g), 0, 0;
      ks = {k0, k1};
      break;
    }
    case NoiseKind::Depolarizing:
    case NoiseKind::HeraldedDepolarizing: {
      // Averaged over heralds, heralded depolarizing is the depolarizing
      // channel at the same rate.
      ks.push_back(std::sqrt(1.0 - 3.0 * g / 4.0) * pauli_matrix(0));
      for (int p = 1; p < 4; ++p) ks.push_back(std::sqrt(g / 4.0) * pauli_matrix(p));
      break;
    }
    case NoiseKind::HeraldedReset: {
      Matrix2cd k1, k2;
      k1 << 1, 0, 0, 0;
      k2 << 0, 1, 0, 0;
      ks = {std::sqrt(1.0 - g) * Matrix2cd::Identity(), std::sqrt(g) * k1, std::sqrt(g) * k2};
      break;
    }
  }
  return ks;
}

PauliTransferMatrix ptm_from_kraus(const std::vector<Matrix2cd>& kraus) {
  PauliTransferMatrix t;
  for (int q = 0; q < 4; ++q) {
    Matrix2cd out = Matrix2cd::Zero();
    for (const auto& k : kraus) out += k * pauli_matrix(q) * k.adjoint();
    for (int p = 0; p < 4; ++p) {
      t(p, q) = 0.5 * (pauli_matrix(p) * out).trace().real();
    }
  }
  return t;
}

PauliTransferMatrix channel_ptm(const NoiseSpec& noise) {
  const double g = noise.gamma;
  PauliTransferMatrix t = PauliTransferMatrix::Identity();
  switch (noise.kind) {
    case NoiseKind::None:
      break;
    case NoiseKind::AmplitudeDamping: {
      const double s = std::sqrt(1.0 - g);
      t(1, 1) = s;
      t(2, 2) = s;
      t(3, 3) = 1.0 - g;
      t(3, 0) = g;
      break;
    }
    case NoiseKind::Depolarizing:
    case NoiseKind::HeraldedDepolarizing:
      t(1, 1) = t(2, 2) = t(3, 3) = 1.0 - g;
      break;
    case NoiseKind::HeraldedReset:
      t(1, 1) = t(2, 2) = t(3, 3) = 1.0 - g;
      t(3, 0) = g;
      break;
  }
  return t;
}

PauliTransferMatrix fired_ptm(NoiseKind kind) {
  PauliTransferMatrix t = PauliTransferMatrix::Zero();
  t(0, 0) = 1.0;
  switch (kind) {
    case NoiseKind::HeraldedReset:
      t(3, 0) = 1.0;  // everything maps to |0><0| = (I + Z) / 2
      break;
    case NoiseKind::HeraldedDepolarizing:
      break;
    default:
      throw std::invalid_argument("fired_ptm: channel is not heralded");
  }
  return t;
}

std::vector<Matrix2cd> fired_kraus(NoiseKind kind) {
  Matrix2cd k1, k2;
  k1 << 1, 0, 0, 0;
  k2 << 0, 1, 0, 0;
  switch (kind) {
    case NoiseKind::HeraldedReset:
      return {k1, k2};
    case NoiseKind::HeraldedDepolarizing: {
      std::vector<Matrix2cd> ks;
      for (int p = 0; p < 4; ++p) ks.push_back(0.5 * pauli_matrix(p));
      return ks;
    }
    default:
      throw std::invalid_argument("fired_kraus: channel is not heralded");
  }
}

double contraction_coefficient(const NoiseSpec& noise) {
  PauliTransferMatrix t = channel_ptm(noise);
  double acc = 0.0;
  for (int i = 1; i < 4; ++i) acc += t(i, 0) * t(i, 0);
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) acc += t(i, j) * t(i, j);
  return acc / 3.0;
}

Eigen::Matrix4cd channel_superop(const NoiseSpec& noise) {
  auto kraus = kraus_operators(noise);
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  // Column J = 2i' + j' holds the vectorization of N(|i'><j'|).
  for (int ip = 0; ip < 2; ++ip) {
    for (int jp = 0; jp < 2; ++jp) {
      Matrix2cd e = Matrix2cd::Zero();
      e(ip, jp) = 1.0;
      Matrix2cd out = Matrix2cd::Zero();
      for (const auto& k : kraus) out += k * e * k.adjoint();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s(2 * i + j, 2 * ip + jp) = out(i, j);
    }
  }
  return s;
}

}  // namespace rcsim
