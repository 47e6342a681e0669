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

#include "rcsim/layout.hpp"

#include <stdexcept>

namespace rcsim {

std::vector<GateLayer> build_layout_1d(const GridGeometry& geometry, int depth) {
  if (geometry.dimension() != 1) throw std::invalid_argument("build_layout_1d needs a 1D grid");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  const int n = geometry.num_qubits();
  if (n < 2) throw std::invalid_argument("need at least two qubits");

  std::vector<GateLayer> layers;
  layers.reserve(depth);
  for (int t = 1; t <= depth; ++t) {
    GateLayer layer;
    layer.layer_index = t;
    // 0-based: odd layers start at qubit 1, even layers at qubit 0.
    int start = (t % 2 == 1) ? 1 : 0;
    int k = 0;
    for (int a = start; a + 1 < n; a += 2) layer.pairs.push_back({a, a + 1, k++});
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<GateLayer> build_layout_2d(const GridGeometry& geometry, int depth) {
  if (geometry.dimension() != 2) throw std::invalid_argument("build_layout_2d needs a 2D grid");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  const int rows = geometry.dims[0];
  const int cols = geometry.dims[1];
  if (rows % 2 != 0 || cols % 2 != 0) {
    throw std::invalid_argument("2D brickwork requires even side lengths");
  }

  std::vector<GateLayer> layers;
  layers.reserve(depth);
  for (int t = 1; t <= depth; ++t) {
    GateLayer layer;
    layer.layer_index = t;
    int k = 0;
    switch (t % 4) {
      case 1:  // horizontal, first row of each pair even (0-based)
        for (int i = 0; i + 1 < rows; i += 2)
          for (int j = 0; j < cols; ++j)
            layer.pairs.push_back({geometry.qubit_at({i, j}), geometry.qubit_at({i + 1, j}), k++});
        break;
      case 2:  // vertical, first column odd
        for (int i = 0; i < rows; ++i)
          for (int j = 1; j + 1 < cols; j += 2)
            layer.pairs.push_back({geometry.qubit_at({i, j}), geometry.qubit_at({i, j + 1}), k++});
        break;
      case 3:  // horizontal, first row odd
        for (int i = 1; i + 1 < rows; i += 2)
          for (int j = 0; j < cols; ++j)
            layer.pairs.push_back({geometry.qubit_at({i, j}), geometry.qubit_at({i + 1, j}), k++});
        break;
      case 0:  // vertical, first column even
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j + 1 < cols; j += 2)
            layer.pairs.push_back({geometry.qubit_at({i, j}), geometry.qubit_at({i, j + 1}), k++});
        break;
    }
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<GateLayer> build_layout(const GridGeometry& geometry, int depth) {
  switch (geometry.dimension()) {
    case 1: return build_layout_1d(geometry, depth);
    case 2: return build_layout_2d(geometry, depth);
    default: throw std::invalid_argument("built-in layouts cover 1D and 2D grids only");
  }
}

}  // namespace rcsim
