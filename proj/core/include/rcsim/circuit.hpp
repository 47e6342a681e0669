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

#ifndef RCSIM_CIRCUIT_HPP
#define RCSIM_CIRCUIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "rcsim/clifford.hpp"
#include "rcsim/geometry.hpp"
#include "rcsim/layout.hpp"
#include "rcsim/noise.hpp"
#include "rcsim/rng.hpp"

namespace rcsim {

enum class GateFamily { Haar2Q, Clifford2Q, Identity2Q };

std::string to_string(GateFamily family);
GateFamily gate_family_from_string(const std::string& name);

/// Everything that determines a circuit ensemble member: geometry, depth,
/// gate family, noise and the seed. Layouts and gate draws are pure functions
/// of the descriptor, so a descriptor plus a realization index pins one
/// circuit realization exactly.
struct CircuitDescriptor {
  GridGeometry geometry;
  int depth = 0;
  GateFamily gate_family = GateFamily::Haar2Q;
  NoiseSpec noise;
  uint64_t seed = 0;

  std::string to_json() const;
  /// Parses the canonical JSON form; unknown fields are rejected.
  static CircuitDescriptor from_json(const std::string& text);
};

/// One drawn gate. `clifford` is set for the Clifford2Q and Identity2Q
/// families.
struct TwoQubitGate {
  Eigen::Matrix4cd unitary;
  std::optional<TwoQubitClifford> clifford;
};

/// Deterministic gate draw for layer t (1-based, counted in the original
/// circuit) and gate slot k within the layer.
TwoQubitGate sample_gate(const CircuitDescriptor& descriptor, int layer, int pair_index,
                         uint64_t realization = 0);

/// Herald outcomes for heralded noise; returns false for non-heralded kinds.
bool herald_fired(const CircuitDescriptor& descriptor, uint64_t realization, int layer,
                  int qubit);

/// Materialized herald record: fired[layer - 1][qubit].
std::vector<std::vector<bool>> draw_heralds(const CircuitDescriptor& descriptor,
                                            uint64_t realization);

/// A realized circuit: descriptor + realization index + (possibly truncated
/// or custom) layer list. Layer entries keep their original layer_index so
/// that gate draws and heralds agree between the full circuit, truncations
/// and lightcone restrictions.
class Circuit {
 public:
  /// Grid circuit with the built-in brickwork layout.
  Circuit(CircuitDescriptor descriptor, uint64_t realization = 0);

  /// Circuit on arbitrary connectivity with caller-provided layers.
  Circuit(Graph graph, std::vector<GateLayer> layers, GateFamily family, NoiseSpec noise,
          uint64_t seed, uint64_t realization = 0);

  int num_qubits() const { return graph_.num_vertices(); }
  int depth() const { return static_cast<int>(layers_.size()); }
  const std::vector<GateLayer>& layers() const { return layers_; }
  const Graph& graph() const { return graph_; }
  const std::optional<GridGeometry>& grid() const { return grid_; }
  GateFamily family() const { return family_; }
  const NoiseSpec& noise() const { return noise_; }
  uint64_t seed() const { return seed_; }
  uint64_t realization() const { return realization_; }

  Eigen::Matrix4cd gate_unitary(int layer_index, int pair_index) const;
  /// Throws std::invalid_argument for the Haar family.
  TwoQubitClifford gate_clifford(int layer_index, int pair_index) const;
  bool herald_fired(int layer_index, int qubit) const;

  /// The sub-circuit made of the final d_star layers, acting on |0^n> again.
  /// Gate draws reproduce the original layers' draws.
  Circuit last_layers(int d_star) const;

 private:
  Graph graph_;
  std::optional<GridGeometry> grid_;
  std::vector<GateLayer> layers_;
  GateFamily family_;
  NoiseSpec noise_;
  uint64_t seed_ = 0;
  uint64_t realization_ = 0;
};

/// Spec'd truncation entry point: descriptor -> circuit of the last d_star
/// layers of realization `realization`.
Circuit truncate_circuit(const CircuitDescriptor& descriptor, int d_star,
                         uint64_t realization = 0);

}  // namespace rcsim

#endif
