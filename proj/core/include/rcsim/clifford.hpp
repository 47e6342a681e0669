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

#ifndef RCSIM_CLIFFORD_HPP
#define RCSIM_CLIFFORD_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "rcsim/rng.hpp"

namespace rcsim {

/// Pauli on at most two qubits: bit 0 of x/z is the first qubit, bit 1 the
/// second. phase is the exponent of i in front of the canonical form where
/// x = z = 1 on a qubit means Y (not XZ).
struct Pauli2 {
  uint8_t x = 0;
  uint8_t z = 0;
  uint8_t phase = 0;  // i^phase, mod 4

  bool commutes_with(const Pauli2& other) const;
  Pauli2& operator*=(const Pauli2& other);
  friend Pauli2 operator*(Pauli2 a, const Pauli2& b) {
    a *= b;
    return a;
  }
  bool operator==(const Pauli2&) const = default;

  bool is_identity() const { return x == 0 && z == 0; }
  /// Hermitian sign: +1 for phase 0, -1 for phase 2; throws on i/-i.
  int sign() const;

  Eigen::Matrix4cd matrix() const;
};

/// A two-qubit Clifford element recorded by the conjugation images of
/// X_1, Z_1, X_2, Z_2. Images determine the element up to global phase.
struct TwoQubitClifford {
  Pauli2 x1, z1, x2, z2;

  /// Conjugates a (phase-tracked) two-qubit Pauli through the gate.
  Pauli2 conjugate(const Pauli2& p) const;

  /// Synthesizes the 4x4 unitary realizing the images, with a deterministic
  /// global phase.
  Eigen::Matrix4cd unitary() const;

  /// Extracts images from an explicit unitary; throws std::invalid_argument
  /// when the matrix is not Clifford (to 1e-8).
  static TwoQubitClifford from_unitary(const Eigen::Matrix4cd& u);

  static TwoQubitClifford identity();
  static TwoQubitClifford cnot();  // control = first qubit
  static TwoQubitClifford cz();
  static TwoQubitClifford swap_gate();
  /// Single-qubit gate embedded on one slot (0 or 1) of the pair.
  static TwoQubitClifford h(int slot);
  static TwoQubitClifford s(int slot);
  static TwoQubitClifford x(int slot);
};

/// Uniform draw over all 11520 two-qubit Clifford elements (mod phase) by
/// sampling generator images step by step from their exact candidate sets.
TwoQubitClifford random_two_qubit_clifford(CounterRng& rng);

/// Haar-random unitary: QR of a complex Ginibre matrix with the R diagonal's
/// phases absorbed into Q.
Eigen::MatrixXcd random_haar_unitary(int dim, CounterRng& rng);

}  // namespace rcsim

#endif
