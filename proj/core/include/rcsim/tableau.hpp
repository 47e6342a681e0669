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

#ifndef RCSIM_TABLEAU_HPP
#define RCSIM_TABLEAU_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rcsim/circuit.hpp"
#include "rcsim/clifford.hpp"
#include "rcsim/distribution.hpp"

namespace rcsim {

/// Bit-packed generating set of a stabilizer group. Row r holds the x and z
/// bit vectors of one signed Pauli generator; Y is x = z = 1. Generators stay
/// pairwise commuting and GF(2)-independent under every update here.
class PauliTableau {
 public:
  /// Empty generating set (the maximally mixed state).
  explicit PauliTableau(int n);

  /// |0^n> stabilized by {+Z_1, ..., +Z_n}.
  static PauliTableau zero_state(int n);

  /// Rows like "+ZZI" or "-XY" (one char per qubit; optional sign prefix).
  static PauliTableau from_strings(int n, const std::vector<std::string>& rows);

  int num_qubits() const { return n_; }
  int num_generators() const { return static_cast<int>(signs_.size()); }

  bool x_bit(int row, int qubit) const;
  bool z_bit(int row, int qubit) const;
  int sign(int row) const { return signs_[row] ? -1 : +1; }
  void set_sign(int row, int sign);
  std::string row_string(int row) const;

  void append_row(const std::string& pauli);

  // -- Circuit updates ------------------------------------------------------

  void apply_clifford(const TwoQubitClifford& gate, int a, int b);
  void apply_h(int qubit);
  void apply_s(int qubit);
  void apply_x(int qubit);

  /// Keeps the subgroup acting as identity on `qubit` when the herald fires.
  void apply_heralded_depolarizing(int qubit, bool fired);
  /// As above, then adjoins +Z on the reset qubit.
  void apply_heralded_reset(int qubit, bool fired);

  // -- Output-distribution queries ------------------------------------------

  /// Generating set of the subgroup of I/Z-only elements.
  PauliTableau diagonal_subgroup() const;

  bool is_diagonal() const;

  /// Shannon entropy (bits) of the output distribution restricted to
  /// `region`; requires a diagonal tableau. Always an integer:
  /// |region| - rank of the generators supported inside the region.
  int region_entropy(const std::vector<int>& region) const;

  /// I(X:Z|Y) of the output distribution; regions must be disjoint. Computed
  /// from four region entropies of the diagonal subgroup, hence a nonnegative
  /// integer.
  int cmi(const std::vector<int>& x, const std::vector<int>& y,
          const std::vector<int>& z) const;

  /// Exact conditional distribution of the bits in `targets` given the
  /// assignment given_values on `given` (parallel vectors). Probabilities
  /// are dyadic rationals. Throws std::domain_error on a zero-probability
  /// condition.
  DistributionTable conditional_distribution(const std::vector<int>& targets,
                                             const std::vector<int>& given,
                                             const std::vector<int>& given_values) const;

  DistributionTable marginal_distribution(const std::vector<int>& targets) const;

  /// Verifies commutation and independence; throws integrity_error.
  void check_invariants() const;

 private:
  void multiply_into(int dst, int src);
  /// Drops the pivots of the (x_q, z_q) columns, keeping the subgroup acting
  /// as identity on the qubit.
  void restrict_to_identity_on(int qubit);
  void erase_rows(const std::vector<int>& rows);

  int n_ = 0;
  int words_ = 0;
  std::vector<uint64_t> bits_;  // per row: words_ x-words then words_ z-words
  std::vector<uint8_t> signs_;
};

/// Applies one gate layer plus the after-layer heralds to a tableau holding
/// the (sub)set `qubits` of the circuit's qubits in ascending order.
void apply_stabilizer_layer(PauliTableau& tableau, const Circuit& circuit, const GateLayer& layer,
                            const std::vector<int>& qubits);

/// Evolves |0^n> through a Clifford (or identity) circuit with heralded (or
/// no) noise, using the circuit's herald record.
PauliTableau run_stabilizer_circuit(const Circuit& circuit);

/// Restricted variant for lightcone regions; layer entries keep original
/// indices so gate draws and heralds match the full circuit.
PauliTableau run_stabilizer_region(const Circuit& circuit, const std::vector<int>& qubits,
                                   const std::vector<GateLayer>& layers);

}  // namespace rcsim

#endif
