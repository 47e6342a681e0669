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

#ifndef RCSIM_DENSE_HPP
#define RCSIM_DENSE_HPP

#include <Eigen/Dense>
#include <vector>

#include "rcsim/circuit.hpp"
#include "rcsim/distribution.hpp"
#include "rcsim/noise.hpp"

namespace rcsim {

enum class InputState { ZeroState, MaximallyMixed };

/// How heralded channels are evaluated: Trajectory fixes the herald record of
/// the realization (matching the stabilizer track), Average applies the
/// herald-averaged channel.
enum class HeraldMode { Trajectory, Average };

using Matrix16d = Eigen::Matrix<double, 16, 16>;

/// Two-qubit PTM of a unitary, rows/columns indexed by pauli pairs with the
/// first listed qubit's pauli as the major digit.
Matrix16d ptm_of_unitary(const Eigen::Matrix4cd& u);

/// Exact density-matrix state for small qubit counts. The state is carried as
/// the real vector of Pauli expectation values Tr(P rho) (4^n entries, qubit
/// 0 the slowest digit); rho itself is Hermitian by construction and can be
/// reconstructed with matrix(). Channel application acts on digit axes with
/// blocked matrix kernels.
class DenseState {
 public:
  static constexpr int kDefaultMaxQubits = 14;

  explicit DenseState(int n, InputState input = InputState::ZeroState,
                      int max_qubits = kDefaultMaxQubits);

  int num_qubits() const { return n_; }
  double trace() const { return coeffs_(0); }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }

  void apply_unitary(const Eigen::Matrix4cd& u, int a, int b);
  void apply_ptm_pair(const Matrix16d& t, int a, int b);
  void apply_ptm_single(const Eigen::Matrix4d& t, int q);
  /// Averaged channel of the noise spec.
  void apply_noise(const NoiseSpec& noise, int q);
  /// Conditioned channel of a fired heralded error.
  void apply_fired(NoiseKind kind, int q);

  /// Computational-basis distribution: diagonal of rho with entries in
  /// (-1e-12, 0) clamped to zero; larger negativity raises integrity_error.
  DistributionTable distribution() const;

  /// Reconstructs the 2^n x 2^n density matrix. Intended for validation at
  /// small n.
  Eigen::MatrixXcd matrix() const;

 private:
  int n_;
  Eigen::VectorXd coeffs_;
};

/// Applies one gate layer plus the after-layer noise to the state, which
/// holds the (sub)set `qubits` of the circuit's qubits in ascending order.
void apply_dense_layer(DenseState& state, const Circuit& circuit, const GateLayer& layer,
                       const std::vector<int>& qubits, HeraldMode mode);

/// Runs the circuit restricted to `qubits` over the given layers (which must
/// only touch those qubits); noise acts on every listed qubit after every
/// layer. Layers keep their original indices, so gate draws and heralds match
/// the unrestricted circuit.
DenseState evolve_region(const Circuit& circuit, const std::vector<int>& qubits,
                         const std::vector<GateLayer>& layers,
                         InputState input = InputState::ZeroState,
                         HeraldMode mode = HeraldMode::Trajectory,
                         int max_qubits = DenseState::kDefaultMaxQubits);

DenseState evolve(const Circuit& circuit, InputState input = InputState::ZeroState,
                  HeraldMode mode = HeraldMode::Trajectory,
                  int max_qubits = DenseState::kDefaultMaxQubits);

}  // namespace rcsim

#endif
