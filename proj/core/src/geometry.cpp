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

#include "rcsim/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace rcsim {

GridGeometry::GridGeometry(std::vector<int> d) : dims(std::move(d)) {
  if (dims.empty()) throw std::invalid_argument("grid needs at least one dimension");
  for (int s : dims) {
    if (s <= 0) throw std::invalid_argument("grid side lengths must be positive");
  }
}

int GridGeometry::num_qubits() const {
  int n = 1;
  for (int s : dims) n *= s;
  return n;
}

std::vector<int> GridGeometry::coords(int qubit) const {
  std::vector<int> c(dims.size());
  for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
    c[a] = qubit % dims[a];
    qubit /= dims[a];
  }
  return c;
}

int GridGeometry::qubit_at(const std::vector<int>& coords) const {
  if (coords.size() != dims.size()) throw std::invalid_argument("coordinate rank mismatch");
  int q = 0;
  for (size_t a = 0; a < dims.size(); ++a) {
    if (coords[a] < 0 || coords[a] >= dims[a]) throw std::out_of_range("coordinate out of grid");
    q = q * dims[a] + coords[a];
  }
  return q;
}

int GridGeometry::distance(int a, int b) const {
  auto ca = coords(a), cb = coords(b);
  int d = 0;
  for (size_t i = 0; i < ca.size(); ++i) d += std::abs(ca[i] - cb[i]);
  return d;
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)), adjacency_(n) {
  for (auto& [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) {
      throw std::invalid_argument("bad edge");
    }
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
}

Graph Graph::from_grid(const GridGeometry& geometry) {
  std::vector<std::pair<int, int>> edges;
  int n = geometry.num_qubits();
  for (int q = 0; q < n; ++q) {
    auto c = geometry.coords(q);
    for (size_t a = 0; a < c.size(); ++a) {
      if (c[a] + 1 < geometry.dims[a]) {
        auto c2 = c;
        ++c2[a];
        edges.emplace_back(q, geometry.qubit_at(c2));
      }
    }
  }
  return Graph(n, std::move(edges));
}

Graph Graph::path(int n) { return from_grid(GridGeometry({n})); }

Graph Graph::star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

int Graph::distance(int a, int b) const {
  if (a == b) return 0;
  std::vector<int> dist(n_, -1);
  std::deque<int> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adjacency_[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        if (w == b) return dist[w];
        queue.push_back(w);
      }
    }
  }
  return -1;
}

std::vector<int> Graph::ball(int center, int radius) const {
  std::vector<int> dist(n_, -1);
  std::deque<int> queue{center};
  dist[center] = 0;
  std::vector<int> out{center};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (dist[v] == radius) continue;
    for (int w : adjacency_[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        out.push_back(w);
        queue.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rcsim
