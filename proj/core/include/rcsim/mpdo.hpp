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

#ifndef RCSIM_MPDO_HPP
#define RCSIM_MPDO_HPP

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "rcsim/circuit.hpp"
#include "rcsim/noise.hpp"
#include "rcsim/rng.hpp"

namespace rcsim {

using Matrix16cd = Eigen::Matrix<std::complex<double>, 16, 16>;

/// Vectorized two-site channel (noise o unitary) acting on the physical
/// indices I = 2i + j of neighboring sites. Heralded noise kinds are
/// rejected; they belong to the stabilizer track.
Matrix16cd build_superop(const Eigen::Matrix4cd& gate, const NoiseSpec& noise);

/// Single-site vectorized channel.
Eigen::Matrix4cd build_single_superop(const NoiseSpec& noise);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  int samples = 0;
};

/// Tensor train over the 4-dimensional vectorized physical index of each
/// qubit: the density operator as a matrix product with bounded bond
/// dimension. Site k is stored as a (left * 4) x right matrix with row
/// l * 4 + p.
class MpdoState {
 public:
  MpdoState(int n, int chi_max);

  int num_qubits() const { return n_; }
  int chi_max() const { return chi_max_; }
  int bond_dimension(int bond) const;
  int max_bond_dimension() const;
  int center() const { return center_; }
  double last_trace() const { return last_trace_; }
  double truncation_weight() const { return truncation_weight_; }
  long negativity_warnings() const { return negativity_warnings_; }
  const Eigen::MatrixXcd& site(int k) const { return sites_[k]; }
  const Eigen::VectorXd& bond_spectrum(int bond) const { return spectra_[bond]; }

  /// Applies a two-site superoperator at sites (k, k+1) with SVD truncation
  /// to chi_max and trace renormalization.
  void apply_superop(const Matrix16cd& m, int k);

  /// Convenience: superop of gate + per-qubit noise.
  void apply_gate(const Eigen::Matrix4cd& u, int k, const NoiseSpec& noise = NoiseSpec());

  /// Single-site channel (idle-qubit noise). Exact, no truncation.
  void apply_single_site(const Eigen::Matrix4cd& superop, int k);

  /// Moves the canonical center to site k.
  void canonicalize_to(int k);

  double trace() const;

  /// Joint probability of the first bits.size() qubits reading the given
  /// bits, trailing qubits marginalized. Small negative values (above
  /// -1e-10) are clamped to zero; worse negativity increments the warning
  /// counter.
  double diagonal_prob(const std::vector<int>& bits) const;

  /// Shannon entropy of the normalized squared bond spectrum at `bond`
  /// (between sites bond and bond+1).
  double mpoee(int bond);

  /// Monte-Carlo entropy of the region's marginal via sequential conditional
  /// sampling; returns mean and standard error over the samples.
  McEstimate mc_entropy(const std::vector<int>& region, int num_samples, CounterRng& rng) const;

  /// MC CMI estimate; the XYZ draws are shared across the four entropy
  /// terms. Exact zero when X or Z is empty.
  McEstimate mc_cmi(const std::vector<int>& x, const std::vector<int>& y,
                    const std::vector<int>& z, int num_samples, CounterRng& rng) const;

  /// Checkpoint: one-line JSON header {n, chi_max, center, trace} followed by
  /// per-site (shape, row-major complex pairs) binary blocks, little-endian.
  void save(const std::string& path) const;
  static MpdoState load(const std::string& path);

 private:
  struct SamplingCache;
  void invalidate_cache();
  const SamplingCache& cache() const;
  double conditional_walk(const std::vector<int>& region, std::vector<int>* bits,
                          CounterRng* rng) const;

  int n_ = 0;
  int chi_max_ = 0;
  int center_ = -1;
  double last_trace_ = 1.0;
  double truncation_weight_ = 0.0;
  mutable long negativity_warnings_ = 0;
  std::vector<Eigen::MatrixXcd> sites_;
  std::vector<Eigen::VectorXd> spectra_;
  mutable std::shared_ptr<SamplingCache> cache_;
};

/// Applies one layer of a 1D nearest-neighbor circuit: gated pairs take the
/// combined gate + noise superop, idle qubits the single-site noise channel.
void apply_mpdo_layer(MpdoState& state, const Circuit& circuit, const GateLayer& layer);

/// Evolves |0^n><0^n| through a 1D nearest-neighbor circuit.
MpdoState run_mpdo_circuit(const Circuit& circuit, int chi_max);

}  // namespace rcsim

#endif
