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

#ifndef RCSIM_NOISE_HPP
#define RCSIM_NOISE_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace rcsim {

enum class NoiseKind {
  None,
  AmplitudeDamping,
  Depolarizing,
  HeraldedReset,
  HeraldedDepolarizing,
};

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

/// Single-qubit noise applied to every qubit after every gate layer.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double gamma = 0.0;

  NoiseSpec() = default;
  NoiseSpec(NoiseKind k, double g);

  bool is_heralded() const {
    return kind == NoiseKind::HeraldedReset || kind == NoiseKind::HeraldedDepolarizing;
  }
  bool is_trivial() const { return kind == NoiseKind::None || gamma == 0.0; }
};

/// Pauli transfer matrix T[P][Q] = Tr[P N(Q)] / 2, rows and columns ordered
/// I, X, Y, Z. Trace-preserving channels have first row (1, 0, 0, 0).
using PauliTransferMatrix = Eigen::Matrix4d;

/// Kraus operators of the channel (heralded kinds return the averaged
/// channel's Kraus set).
std::vector<Eigen::Matrix2cd> kraus_operators(const NoiseSpec& noise);

PauliTransferMatrix channel_ptm(const NoiseSpec& noise);

/// PTM of a channel given by an explicit Kraus set; used as the independent
/// route when testing the closed forms.
PauliTransferMatrix ptm_from_kraus(const std::vector<Eigen::Matrix2cd>& kraus);

/// PTM of the conditioned channel when a heralded error fires: reset maps
/// everything to |0><0|, depolarize to I/2. Identity when it does not fire.
PauliTransferMatrix fired_ptm(NoiseKind kind);

/// Kraus set of the fired branch of a heralded channel.
std::vector<Eigen::Matrix2cd> fired_kraus(NoiseKind kind);

/// Normal-form contraction coefficient (|t|^2 + |M|_F^2) / 3 with t the lower
/// three entries of the PTM's first column and M its lower-right 3x3 block.
/// Equals 1 exactly for unitary channels and is < 1 otherwise.
double contraction_coefficient(const NoiseSpec& noise);

/// Vectorized superoperator of the channel in the |i><j| -> |2i+j> basis.
Eigen::Matrix4cd channel_superop(const NoiseSpec& noise);

}  // namespace rcsim

#endif
