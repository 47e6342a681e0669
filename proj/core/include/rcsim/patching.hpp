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

#ifndef RCSIM_PATCHING_HPP
#define RCSIM_PATCHING_HPP

#include <map>
#include <string>
#include <vector>

#include "rcsim/circuit.hpp"
#include "rcsim/dense.hpp"
#include "rcsim/distribution.hpp"
#include "rcsim/geometry.hpp"
#include "rcsim/tableau.hpp"

namespace rcsim {

/// Coarse-grained partition of a grid into side-l hypercubes (ragged at the
/// boundary), with edges between patches closer than l and the prior-neighbor
/// sets N'(X_i) induced by the raster order.
struct PatchGraph {
  int ell = 1;
  GridGeometry geometry;
  std::vector<std::vector<int>> patches;           // sorted qubit lists
  std::vector<std::pair<int, int>> edges;          // i < j patch index pairs
  std::vector<std::vector<int>> neighbors;         // N(X_i)
  std::vector<std::vector<int>> prior_neighbors;   // N(X_i) intersect {j < i}

  int num_patches() const { return static_cast<int>(patches.size()); }
  /// Union of the prior neighbors' qubits, ascending.
  std::vector<int> prior_qubits(int patch) const;
};

PatchGraph coarse_grain(const GridGeometry& geometry, int ell);

/// Qubits and restricted gate layers with causal influence on a region
/// through the final depth_window layers. Layers keep original indices and
/// may be empty (noise still acts there).
struct LightconeRegion {
  std::vector<int> qubits;
  std::vector<GateLayer> layers;
};

LightconeRegion backward_lightcone(const Circuit& circuit, const std::vector<int>& region,
                                   int depth_window);

enum class SamplerBackend { Dense, Stabilizer };

SamplerBackend sampler_backend_from_string(const std::string& name);
std::string to_string(SamplerBackend backend);

/// P(patch | cond = values) of the circuit's output distribution, computed by
/// simulating only the backward lightcone of patch union cond.
DistributionTable patch_conditional(const Circuit& circuit, const std::vector<int>& patch_qubits,
                                    const std::vector<int>& cond_qubits,
                                    const std::vector<int>& cond_values, SamplerBackend backend,
                                    int dense_cap = DenseState::kDefaultMaxQubits);

/// Sequential sampler over coarse-grained patches; samples are distributed as
/// the product of patch conditionals of the sampler's circuit. Conditionals
/// are cached per (patch, assignment).
class PatchingSampler {
 public:
  struct Stats {
    long conditional_draws = 0;
    long backend_invocations = 0;
  };

  PatchingSampler(Circuit circuit, PatchGraph patch_graph, SamplerBackend backend,
                  int dense_cap = DenseState::kDefaultMaxQubits);

  std::vector<int> sample(CounterRng& rng);
  const Stats& stats() const { return stats_; }
  const PatchGraph& patch_graph() const { return graph_; }

 private:
  const DistributionTable& conditional_for(int patch, const std::vector<int>& cond_values);

  Circuit circuit_;
  PatchGraph graph_;
  SamplerBackend backend_;
  int dense_cap_;
  Stats stats_;
  std::map<std::pair<int, std::string>, DistributionTable> cache_;
};

/// One sample from the patching sampler of the truncated circuit (final
/// d_star layers).
std::vector<int> patch_sample(const CircuitDescriptor& descriptor, int ell, int d_star,
                              SamplerBackend backend, CounterRng& rng, uint64_t realization = 0,
                              int dense_cap = DenseState::kDefaultMaxQubits);

/// Bit-by-bit sampler on arbitrary connectivity: qubit v_i is drawn
/// conditioned on the assigned part of the radius-l ball around it, with
/// dense (or stabilizer) simulation of the lightcone of the ball.
class BallSampler {
 public:
  BallSampler(Circuit circuit, int ell, SamplerBackend backend,
              int dense_cap = DenseState::kDefaultMaxQubits);

  std::vector<int> sample(CounterRng& rng);
  const PatchingSampler::Stats& stats() const { return stats_; }

 private:
  Circuit circuit_;
  int ell_;
  SamplerBackend backend_;
  int dense_cap_;
  PatchingSampler::Stats stats_;
  std::vector<std::vector<int>> balls_;
  std::map<std::pair<int, std::string>, DistributionTable> cache_;
};

std::vector<int> ball_patch_sample(const Circuit& circuit, int ell, SamplerBackend backend,
                                   CounterRng& rng,
                                   int dense_cap = DenseState::kDefaultMaxQubits);

/// The product of patch conditionals P'' = prod_i P_{X_i | N'(X_i)} assembled
/// exactly from the full distribution's marginals.
DistributionTable exact_patch_product(const DistributionTable& p, const PatchGraph& graph);

struct Prop1Report {
  double lhs = 0.0;           // ||P - P''||_1
  double eta_measured = 0.0;  // max CMI over the telescoping steps
  double bound = 0.0;         // (|V| - 1) sqrt(2 ln2 eta)
  bool holds = false;
};

/// Checks ||P - P''||_1 <= (|V|-1) sqrt(2 ln2 eta) with eta the largest
/// telescoping-step CMI I(X_j : X_{<j} \ N'(X_j) | N'(X_j)).
Prop1Report verify_patch_factorization(const DistributionTable& p, const PatchGraph& graph);

/// Convenience: builds P with the dense oracle first.
Prop1Report verify_patch_factorization(const Circuit& circuit, int ell,
                                       int dense_cap = DenseState::kDefaultMaxQubits);

}  // namespace rcsim

#endif
