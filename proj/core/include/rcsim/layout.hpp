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

#ifndef RCSIM_LAYOUT_HPP
#define RCSIM_LAYOUT_HPP

#include <vector>

#include "rcsim/geometry.hpp"

namespace rcsim {

/// One two-qubit gate slot. `index` is the gate's position within the full
/// layer; restricted layers (lightcones) keep the original index so gate
/// draws stay aligned with the unrestricted circuit.
struct GatePair {
  int a = 0;
  int b = 0;
  int index = 0;
};

/// One brickwork layer. layer_index counts from 1.
struct GateLayer {
  int layer_index = 0;
  std::vector<GatePair> pairs;
};

/// 1D brickwork: layer t pairs (i, i+1) starting at even i (1-based) for odd
/// t and odd i for even t.
std::vector<GateLayer> build_layout_1d(const GridGeometry& geometry, int depth);

/// 2D brickwork cycling through the four horizontal/vertical patterns with
/// period 4; both side lengths must be even.
std::vector<GateLayer> build_layout_2d(const GridGeometry& geometry, int depth);

/// Dispatch on geometry dimension.
std::vector<GateLayer> build_layout(const GridGeometry& geometry, int depth);

}  // namespace rcsim

#endif
