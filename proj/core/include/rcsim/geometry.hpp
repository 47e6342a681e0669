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

#ifndef RCSIM_GEOMETRY_HPP
#define RCSIM_GEOMETRY_HPP

#include <cstdint>
#include <vector>

namespace rcsim {

/// A D-dimensional grid of qubits with open boundaries. Qubit indices are
/// row-major linearizations of the grid coordinates (coordinate 0 varies
/// slowest).
struct GridGeometry {
  std::vector<int> dims;

  GridGeometry() = default;
  explicit GridGeometry(std::vector<int> d);

  int dimension() const { return static_cast<int>(dims.size()); }
  int num_qubits() const;

  std::vector<int> coords(int qubit) const;
  int qubit_at(const std::vector<int>& coords) const;

  /// Manhattan (lattice shortest-path) distance between two qubits.
  int distance(int a, int b) const;
};

/// Undirected interaction graph; used for lattice distances on grids and for
/// the ball-based sampler on arbitrary connectivity.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edges);

  static Graph from_grid(const GridGeometry& geometry);
  static Graph path(int n);
  static Graph star(int leaves);

  int num_vertices() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }

  /// BFS shortest-path distance; -1 when disconnected.
  int distance(int a, int b) const;

  /// All vertices within graph distance radius of center (inclusive).
  std::vector<int> ball(int center, int radius) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace rcsim

#endif
