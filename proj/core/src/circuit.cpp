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

#include "rcsim/circuit.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace rcsim {

using nlohmann::json;

std::string to_string(GateFamily family) {
  switch (family) {
    case GateFamily::Haar2Q: return "haar2q";
    case GateFamily::Clifford2Q: return "clifford2q";
    case GateFamily::Identity2Q: return "identity2q";
  }
  throw std::logic_error("bad gate family");
}

GateFamily gate_family_from_string(const std::string& name) {
  if (name == "haar2q") return GateFamily::Haar2Q;
  if (name == "clifford2q") return GateFamily::Clifford2Q;
  if (name == "identity2q") return GateFamily::Identity2Q;
  throw std::invalid_argument("unknown gate family: " + name);
}

namespace {

void reject_unknown_fields(const json& j, std::initializer_list<const char*> allowed,
                           const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* name : allowed) {
      if (it.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(std::string("unknown field \"") + it.key() + "\" in " + where);
    }
  }
}

}  // namespace

std::string CircuitDescriptor::to_json() const {
  json j;
  j["geometry"] = {{"dims", geometry.dims}};
  j["depth"] = depth;
  j["gate_family"] = to_string(gate_family);
  json noise_j;
  noise_j["kind"] = rcsim::to_string(noise.kind);
  noise_j["gamma"] = noise.gamma;
  j["noise"] = noise_j;
  j["seed"] = seed;
  return j.dump();
}

CircuitDescriptor descriptor_from_json_object(const json& j) {
  reject_unknown_fields(j, {"geometry", "depth", "gate_family", "noise", "seed"}, "descriptor");
  if (!j.contains("geometry") || !j.contains("depth") || !j.contains("gate_family") ||
      !j.contains("noise") || !j.contains("seed")) {
    throw std::invalid_argument("descriptor requires geometry, depth, gate_family, noise, seed");
  }
  const json& g = j.at("geometry");
  reject_unknown_fields(g, {"dims"}, "geometry");
  CircuitDescriptor d;
  d.geometry = GridGeometry(g.at("dims").get<std::vector<int>>());
  d.depth = j.at("depth").get<int>();
  if (d.depth < 0) throw std::invalid_argument("depth must be nonnegative");
  d.gate_family = gate_family_from_string(j.at("gate_family").get<std::string>());
  const json& nj = j.at("noise");
  reject_unknown_fields(nj, {"kind", "gamma"}, "noise");
  NoiseKind kind = noise_kind_from_string(nj.at("kind").get<std::string>());
  double gamma = nj.contains("gamma") ? nj.at("gamma").get<double>() : 0.0;
  if (kind != NoiseKind::None && !nj.contains("gamma")) {
    throw std::invalid_argument("noise.gamma required for non-trivial noise");
  }
  d.noise = NoiseSpec(kind, gamma);
  d.seed = j.at("seed").get<uint64_t>();
  return d;
}

CircuitDescriptor CircuitDescriptor::from_json(const std::string& text) {
  return descriptor_from_json_object(json::parse(text));
}

TwoQubitGate sample_gate(const CircuitDescriptor& descriptor, int layer, int pair_index,
                         uint64_t realization) {
  TwoQubitGate g;
  StreamKey key{descriptor.seed, realization, static_cast<uint64_t>(layer),
                static_cast<uint64_t>(pair_index), StreamPurpose::GateDraw};
  CounterRng rng(key);
  switch (descriptor.gate_family) {
    case GateFamily::Identity2Q:
      g.clifford = TwoQubitClifford::identity();
      g.unitary = Eigen::Matrix4cd::Identity();
      break;
    case GateFamily::Clifford2Q:
      g.clifford = random_two_qubit_clifford(rng);
      g.unitary = g.clifford->unitary();
      break;
    case GateFamily::Haar2Q:
      g.unitary = random_haar_unitary(4, rng);
      break;
  }
  return g;
}

bool herald_fired(const CircuitDescriptor& descriptor, uint64_t realization, int layer,
                  int qubit) {
  if (!descriptor.noise.is_heralded()) return false;
  StreamKey key{descriptor.seed, realization, static_cast<uint64_t>(layer),
                static_cast<uint64_t>(qubit), StreamPurpose::Herald};
  CounterRng rng(key);
  return rng.bernoulli(descriptor.noise.gamma);
}

std::vector<std::vector<bool>> draw_heralds(const CircuitDescriptor& descriptor,
                                            uint64_t realization) {
  const int n = descriptor.geometry.num_qubits();
  std::vector<std::vector<bool>> fired(descriptor.depth, std::vector<bool>(n, false));
  for (int t = 1; t <= descriptor.depth; ++t)
    for (int q = 0; q < n; ++q) fired[t - 1][q] = herald_fired(descriptor, realization, t, q);
  return fired;
}

Circuit::Circuit(CircuitDescriptor descriptor, uint64_t realization)
    : graph_(Graph::from_grid(descriptor.geometry)),
      grid_(descriptor.geometry),
      layers_(build_layout(descriptor.geometry, descriptor.depth)),
      family_(descriptor.gate_family),
      noise_(descriptor.noise),
      seed_(descriptor.seed),
      realization_(realization) {}

Circuit::Circuit(Graph graph, std::vector<GateLayer> layers, GateFamily family, NoiseSpec noise,
                 uint64_t seed, uint64_t realization)
    : graph_(std::move(graph)),
      layers_(std::move(layers)),
      family_(family),
      noise_(noise),
      seed_(seed),
      realization_(realization) {
  for (const auto& layer : layers_) {
    for (const auto& p : layer.pairs) {
      if (p.a < 0 || p.b < 0 || p.a >= num_qubits() || p.b >= num_qubits() || p.a == p.b) {
        throw std::invalid_argument("gate pair out of range");
      }
    }
  }
}

Eigen::Matrix4cd Circuit::gate_unitary(int layer_index, int pair_index) const {
  CircuitDescriptor d;
  d.gate_family = family_;
  d.seed = seed_;
  return sample_gate(d, layer_index, pair_index, realization_).unitary;
}

TwoQubitClifford Circuit::gate_clifford(int layer_index, int pair_index) const {
  if (family_ == GateFamily::Haar2Q) {
    throw std::invalid_argument("Haar gates are not Clifford elements");
  }
  if (family_ == GateFamily::Identity2Q) return TwoQubitClifford::identity();
  StreamKey key{seed_, realization_, static_cast<uint64_t>(layer_index),
                static_cast<uint64_t>(pair_index), StreamPurpose::GateDraw};
  CounterRng rng(key);
  return random_two_qubit_clifford(rng);
}

bool Circuit::herald_fired(int layer_index, int qubit) const {
  if (!noise_.is_heralded()) return false;
  StreamKey key{seed_, realization_, static_cast<uint64_t>(layer_index),
                static_cast<uint64_t>(qubit), StreamPurpose::Herald};
  CounterRng rng(key);
  return rng.bernoulli(noise_.gamma);
}

Circuit Circuit::last_layers(int d_star) const {
  if (d_star < 0 || d_star > depth()) {
    throw std::invalid_argument("truncation depth must lie in [0, depth]");
  }
  Circuit out = *this;
  out.layers_.assign(layers_.end() - d_star, layers_.end());
  return out;
}

Circuit truncate_circuit(const CircuitDescriptor& descriptor, int d_star, uint64_t realization) {
  return Circuit(descriptor, realization).last_layers(d_star);
}

}  // namespace rcsim
