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

#include "rcsim/patching.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rcsim/errors.hpp"

namespace rcsim {

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> local_positions(const std::vector<int>& subset, const std::vector<int>& super) {
  std::vector<int> out;
  out.reserve(subset.size());
  for (int q : subset) {
    auto it = std::lower_bound(super.begin(), super.end(), q);
    if (it == super.end() || *it != q) throw std::logic_error("subset not contained");
    out.push_back(static_cast<int>(it - super.begin()));
  }
  return out;
}

std::string assignment_key(const std::vector<int>& values) {
  std::string key;
  key.reserve(values.size());
  for (int v : values) key.push_back(static_cast<char>('0' + (v & 1)));
  return key;
}

}  // namespace

std::vector<int> PatchGraph::prior_qubits(int patch) const {
  std::vector<int> out;
  for (int j : prior_neighbors[patch]) {
    out.insert(out.end(), patches[j].begin(), patches[j].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

PatchGraph coarse_grain(const GridGeometry& geometry, int ell) {
  if (ell < 1) throw std::invalid_argument("patch side must be >= 1");
  PatchGraph g;
  g.ell = ell;
  g.geometry = geometry;
  const int dim = geometry.dimension();

  std::vector<int> patch_dims(dim);
  for (int a = 0; a < dim; ++a) patch_dims[a] = (geometry.dims[a] + ell - 1) / ell;
  int num_patches = 1;
  for (int a = 0; a < dim; ++a) num_patches *= patch_dims[a];

  // Patch boxes in raster (row-major) order over the patch grid.
  std::vector<std::vector<int>> lo(num_patches, std::vector<int>(dim));
  std::vector<std::vector<int>> hi(num_patches, std::vector<int>(dim));
  for (int p = 0; p < num_patches; ++p) {
    int rest = p;
    for (int a = dim - 1; a >= 0; --a) {
      int pc = rest % patch_dims[a];
      rest /= patch_dims[a];
      lo[p][a] = pc * ell;
      hi[p][a] = std::min((pc + 1) * ell, geometry.dims[a]) - 1;
    }
  }

  g.patches.assign(num_patches, {});
  for (int q = 0; q < geometry.num_qubits(); ++q) {
    auto c = geometry.coords(q);
    int p = 0;
    for (int a = 0; a < dim; ++a) p = p * patch_dims[a] + c[a] / ell;
    g.patches[p].push_back(q);
  }
  for (auto& patch : g.patches) std::sort(patch.begin(), patch.end());

  g.neighbors.assign(num_patches, {});
  for (int i = 0; i < num_patches; ++i) {
    for (int j = i + 1; j < num_patches; ++j) {
      int dist = 0;
      for (int a = 0; a < dim; ++a) {
        dist += std::max({0, lo[i][a] - hi[j][a], lo[j][a] - hi[i][a]});
      }
      if (dist < ell) {
        g.edges.emplace_back(i, j);
        g.neighbors[i].push_back(j);
        g.neighbors[j].push_back(i);
      }
    }
  }
  g.prior_neighbors.assign(num_patches, {});
  for (int i = 0; i < num_patches; ++i) {
    for (int j : g.neighbors[i]) {
      if (j < i) g.prior_neighbors[i].push_back(j);
    }
    std::sort(g.prior_neighbors[i].begin(), g.prior_neighbors[i].end());
  }
  return g;
}

LightconeRegion backward_lightcone(const Circuit& circuit, const std::vector<int>& region,
                                   int depth_window) {
  if (region.empty()) throw std::invalid_argument("lightcone region must be nonempty");
  if (depth_window < 0 || depth_window > circuit.depth()) {
    throw std::invalid_argument("depth window must lie in [0, depth]");
  }
  std::set<int> cone(region.begin(), region.end());
  const auto& layers = circuit.layers();
  std::vector<GateLayer> restricted(depth_window);
  for (int i = depth_window - 1; i >= 0; --i) {
    const GateLayer& layer = layers[layers.size() - depth_window + i];
    GateLayer kept;
    kept.layer_index = layer.layer_index;
    for (const auto& pair : layer.pairs) {
      if (cone.count(pair.a) || cone.count(pair.b)) kept.pairs.push_back(pair);
    }
    for (const auto& pair : kept.pairs) {
      cone.insert(pair.a);
      cone.insert(pair.b);
    }
    restricted[i] = std::move(kept);
  }
  LightconeRegion out;
  out.qubits.assign(cone.begin(), cone.end());
  out.layers = std::move(restricted);
  return out;
}

SamplerBackend sampler_backend_from_string(const std::string& name) {
  if (name == "dense") return SamplerBackend::Dense;
  if (name == "stabilizer") return SamplerBackend::Stabilizer;
  throw std::invalid_argument("unknown backend: " + name);
}

std::string to_string(SamplerBackend backend) {
  return backend == SamplerBackend::Dense ? "dense" : "stabilizer";
}

DistributionTable patch_conditional(const Circuit& circuit, const std::vector<int>& patch_qubits,
                                    const std::vector<int>& cond_qubits,
                                    const std::vector<int>& cond_values, SamplerBackend backend,
                                    int dense_cap) {
  if (cond_qubits.size() != cond_values.size()) {
    throw std::invalid_argument("conditioning qubits and values must align");
  }
  LightconeRegion cone =
      backward_lightcone(circuit, sorted_union(patch_qubits, cond_qubits), circuit.depth());
  auto patch_local = local_positions(patch_qubits, cone.qubits);
  auto cond_local = local_positions(cond_qubits, cone.qubits);

  if (backend == SamplerBackend::Stabilizer) {
    PauliTableau tableau = run_stabilizer_region(circuit, cone.qubits, cone.layers);
    return tableau.conditional_distribution(patch_local, cond_local, cond_values);
  }

  if (static_cast<int>(cone.qubits.size()) > dense_cap) {
    throw capacity_error("lightcone spans " + std::to_string(cone.qubits.size()) +
                         " qubits, above the dense cap of " + std::to_string(dense_cap) +
                         "; reduce d_star or ell, or use the stabilizer backend");
  }
  DenseState state = evolve_region(circuit, cone.qubits, cone.layers, InputState::ZeroState,
                                   HeraldMode::Trajectory, dense_cap);
  DistributionTable table = state.distribution();
  uint32_t packed = 0;
  for (int v : cond_values) packed = (packed << 1) | static_cast<uint32_t>(v & 1);
  return conditional(table, patch_local, cond_local, packed);
}

PatchingSampler::PatchingSampler(Circuit circuit, PatchGraph patch_graph, SamplerBackend backend,
                                 int dense_cap)
    : circuit_(std::move(circuit)),
      graph_(std::move(patch_graph)),
      backend_(backend),
      dense_cap_(dense_cap) {
  if (graph_.geometry.num_qubits() != circuit_.num_qubits()) {
    throw std::invalid_argument("patch graph does not match circuit size");
  }
}

const DistributionTable& PatchingSampler::conditional_for(int patch,
                                                          const std::vector<int>& cond_values) {
  auto key = std::make_pair(patch, assignment_key(cond_values));
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    ++stats_.backend_invocations;
    DistributionTable table = patch_conditional(circuit_, graph_.patches[patch],
                                                graph_.prior_qubits(patch), cond_values, backend_,
                                                dense_cap_);
    it = cache_.emplace(std::move(key), std::move(table)).first;
  }
  return it->second;
}

std::vector<int> PatchingSampler::sample(CounterRng& rng) {
  std::vector<int> bits(circuit_.num_qubits(), -1);
  for (int i = 0; i < graph_.num_patches(); ++i) {
    std::vector<int> cond_qubits = graph_.prior_qubits(i);
    std::vector<int> cond_values;
    cond_values.reserve(cond_qubits.size());
    for (int q : cond_qubits) cond_values.push_back(bits[q]);
    const DistributionTable& table = conditional_for(i, cond_values);
    ++stats_.conditional_draws;
    uint32_t drawn = sample_index(table, rng);
    const auto& qubits = graph_.patches[i];
    for (size_t j = 0; j < qubits.size(); ++j) {
      bits[qubits[j]] = (drawn >> (qubits.size() - 1 - j)) & 1;
    }
  }
  return bits;
}

std::vector<int> patch_sample(const CircuitDescriptor& descriptor, int ell, int d_star,
                              SamplerBackend backend, CounterRng& rng, uint64_t realization,
                              int dense_cap) {
  Circuit truncated = truncate_circuit(descriptor, d_star, realization);
  PatchingSampler sampler(std::move(truncated), coarse_grain(descriptor.geometry, ell), backend,
                          dense_cap);
  return sampler.sample(rng);
}

BallSampler::BallSampler(Circuit circuit, int ell, SamplerBackend backend, int dense_cap)
    : circuit_(std::move(circuit)), ell_(ell), backend_(backend), dense_cap_(dense_cap) {
  if (ell < 0) throw std::invalid_argument("ball radius must be nonnegative");
  balls_.reserve(circuit_.num_qubits());
  for (int v = 0; v < circuit_.num_qubits(); ++v) {
    balls_.push_back(circuit_.graph().ball(v, ell));
  }
}

std::vector<int> BallSampler::sample(CounterRng& rng) {
  std::vector<int> bits(circuit_.num_qubits(), -1);
  for (int v = 0; v < circuit_.num_qubits(); ++v) {
    std::vector<int> cond_qubits;
    for (int w : balls_[v]) {
      if (w < v) cond_qubits.push_back(w);
    }
    std::vector<int> cond_values;
    cond_values.reserve(cond_qubits.size());
    for (int q : cond_qubits) cond_values.push_back(bits[q]);

    auto key = std::make_pair(v, assignment_key(cond_values));
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      ++stats_.backend_invocations;
      DistributionTable table =
          patch_conditional(circuit_, {v}, cond_qubits, cond_values, backend_, dense_cap_);
      it = cache_.emplace(std::move(key), std::move(table)).first;
    }
    ++stats_.conditional_draws;
    bits[v] = static_cast<int>(sample_index(it->second, rng));
  }
  return bits;
}

std::vector<int> ball_patch_sample(const Circuit& circuit, int ell, SamplerBackend backend,
                                   CounterRng& rng, int dense_cap) {
  BallSampler sampler(circuit, ell, backend, dense_cap);
  return sampler.sample(rng);
}

DistributionTable exact_patch_product(const DistributionTable& p, const PatchGraph& graph) {
  const int n = p.num_bits;
  struct Factor {
    std::vector<int> joint_positions;  // patch union prior, ascending
    std::vector<int> cond_positions;   // prior only, ascending
    DistributionTable joint;
    DistributionTable cond;
    int patch_bits;
  };
  std::vector<Factor> factors;
  factors.reserve(graph.num_patches());
  for (int i = 0; i < graph.num_patches(); ++i) {
    Factor f;
    f.cond_positions = graph.prior_qubits(i);
    f.joint_positions = sorted_union(graph.patches[i], f.cond_positions);
    f.joint = marginal(p, f.joint_positions);
    f.cond = f.cond_positions.empty() ? DistributionTable(0, Eigen::VectorXd::Ones(1))
                                      : marginal(p, f.cond_positions);
    f.patch_bits = static_cast<int>(graph.patches[i].size());
    factors.push_back(std::move(f));
  }

  Eigen::VectorXd out(1 << n);
  for (uint32_t b = 0; b < static_cast<uint32_t>(1 << n); ++b) {
    double prob = 1.0;
    for (const auto& f : factors) {
      uint32_t joint_index = 0;
      for (int pos : f.joint_positions) {
        joint_index = (joint_index << 1) |
                      static_cast<uint32_t>(DistributionTable::bit_of(b, pos, n));
      }
      uint32_t cond_index = 0;
      for (int pos : f.cond_positions) {
        cond_index =
            (cond_index << 1) | static_cast<uint32_t>(DistributionTable::bit_of(b, pos, n));
      }
      double denom = f.cond.probs(cond_index);
      if (denom > 0.0) {
        prob *= f.joint.probs(joint_index) / denom;
      } else {
        // Zero-probability prefix under P: the conditional is taken uniform.
        prob *= 1.0 / static_cast<double>(1u << f.patch_bits);
      }
      if (prob == 0.0) break;
    }
    out(b) = prob;
  }
  return DistributionTable(n, std::move(out));
}

Prop1Report verify_patch_factorization(const DistributionTable& p, const PatchGraph& graph) {
  Prop1Report report;
  DistributionTable product = exact_patch_product(p, graph);
  report.lhs = l1_distance(p, product);
  for (int j = 1; j < graph.num_patches(); ++j) {
    std::vector<int> before;  // X_{<j}
    for (int i = 0; i < j; ++i) {
      before.insert(before.end(), graph.patches[i].begin(), graph.patches[i].end());
    }
    std::sort(before.begin(), before.end());
    std::vector<int> cond = graph.prior_qubits(j);
    std::vector<int> far;
    std::set_difference(before.begin(), before.end(), cond.begin(), cond.end(),
                        std::back_inserter(far));
    if (far.empty()) continue;
    double value = exact_cmi(p, graph.patches[j], cond, far);
    report.eta_measured = std::max(report.eta_measured, value);
  }
  report.bound = (graph.num_patches() - 1) * std::sqrt(2.0 * std::log(2.0) *
                                                       std::max(report.eta_measured, 0.0));
  report.holds = report.lhs <= report.bound + 1e-12;
  return report;
}

Prop1Report verify_patch_factorization(const Circuit& circuit, int ell, int dense_cap) {
  DenseState state = evolve(circuit, InputState::ZeroState, HeraldMode::Trajectory, dense_cap);
  if (!circuit.grid()) throw std::invalid_argument("patch verification needs a grid circuit");
  return verify_patch_factorization(state.distribution(), coarse_grain(*circuit.grid(), ell));
}

}  // namespace rcsim
