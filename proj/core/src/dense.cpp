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

#include "rcsim/dense.hpp"

#include <algorithm>
#include <stdexcept>

#include "rcsim/errors.hpp"

namespace rcsim {

namespace {

using Eigen::Matrix4cd;
using std::complex;

const complex<double> kI(0.0, 1.0);

Matrix4cd two_qubit_pauli(int code) {
  auto one = [](int p) {
    Eigen::Matrix2cd m;
    switch (p) {
      case 0: m << 1, 0, 0, 1; break;
      case 1: m << 0, 1, 1, 0; break;
      case 2: m << 0, -kI, kI, 0; break;
      default: m << 1, 0, 0, -1; break;
    }
    return m;
  };
  Eigen::Matrix2cd a = one(code >> 2), b = one(code & 3);
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

constexpr int kTileCols = 4096;

// Applies an r x r matrix to digit blocks of width `stride`, repeated every
// r * stride entries. Shared by the 4x4 and 16x16 (and complex) paths.
template <typename Scalar, int R>
void apply_digit_matrix(Scalar* data, long total, const Eigen::Matrix<Scalar, R, R>& m,
                        long stride) {
  using Block = Eigen::Matrix<Scalar, R, Eigen::Dynamic, Eigen::RowMajor>;
  using Stride = Eigen::OuterStride<>;
  Eigen::Matrix<Scalar, R, Eigen::Dynamic> tile(R, std::min<long>(stride, kTileCols));
  const long group = R * stride;
  for (long base = 0; base < total; base += group) {
    for (long w = 0; w < stride; w += kTileCols) {
      const long cols = std::min<long>(kTileCols, stride - w);
      Eigen::Map<Block, Eigen::Unaligned, Stride> view(data + base + w, R, cols, Stride(stride));
      tile.leftCols(cols).noalias() = m * view;
      view = tile.leftCols(cols);
    }
  }
}

}  // namespace

Matrix16d ptm_of_unitary(const Matrix4cd& u) {
  if ((u * u.adjoint() - Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("gate matrix is not unitary");
  }
  static const std::array<Matrix4cd, 16> paulis = [] {
    std::array<Matrix4cd, 16> p;
    for (int i = 0; i < 16; ++i) p[i] = two_qubit_pauli(i);
    return p;
  }();
  Matrix16d t;
  for (int s = 0; s < 16; ++s) {
    Matrix4cd w = u * paulis[s] * u.adjoint();
    for (int r = 0; r < 16; ++r) {
      t(r, s) = 0.25 * (paulis[r] * w).trace().real();
    }
  }
  return t;
}

DenseState::DenseState(int n, InputState input, int max_qubits) : n_(n) {
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  if (n > max_qubits) {
    throw capacity_error("dense simulation refused: " + std::to_string(n) + " qubits exceeds cap " +
                         std::to_string(max_qubits));
  }
  coeffs_ = Eigen::VectorXd::Zero(1L << (2 * n));
  switch (input) {
    case InputState::ZeroState:
      // Tr(P |0..0><0..0|) = 1 exactly for every P in {I,Z}^n.
      for (long z = 0; z < (1L << n); ++z) {
        long index = 0;
        for (int q = 0; q < n; ++q) {
          index = (index << 2) | (((z >> (n_ - 1 - q)) & 1) ? 3 : 0);
        }
        coeffs_(index) = 1.0;
      }
      break;
    case InputState::MaximallyMixed:
      coeffs_(0) = 1.0;
      break;
  }
}

void DenseState::apply_ptm_single(const Eigen::Matrix4d& t, int q) {
  if (q < 0 || q >= n_) throw std::invalid_argument("qubit out of range");
  const long stride = 1L << (2 * (n_ - 1 - q));
  apply_digit_matrix<double, 4>(coeffs_.data(), coeffs_.size(), t, stride);
}

void DenseState::apply_ptm_pair(const Matrix16d& t, int a, int b) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) {
    throw std::invalid_argument("qubit pair out of range");
  }
  Matrix16d m = t;
  if (a > b) {
    // Reindex so the smaller qubit is the major digit.
    std::swap(a, b);
    Matrix16d p;
    for (int r = 0; r < 16; ++r) {
      int rp = ((r & 3) << 2) | (r >> 2);
      for (int c = 0; c < 16; ++c) p(r, c) = t(rp, ((c & 3) << 2) | (c >> 2));
    }
    m = p;
  }
  const long sa = 1L << (2 * (n_ - 1 - a));
  const long sb = 1L << (2 * (n_ - 1 - b));
  if (b == a + 1) {
    apply_digit_matrix<double, 16>(coeffs_.data(), coeffs_.size(), m, sb);
    return;
  }
  // Non-adjacent digits: gathered 16-vectors.
  double* c = coeffs_.data();
  Eigen::Matrix<double, 16, 1> x;
  const long mid_count = sa / (4 * sb);
  for (long u = 0; u < coeffs_.size(); u += 4 * sa) {
    for (long v = 0; v < mid_count * 4 * sb; v += 4 * sb) {
      for (long w = 0; w < sb; ++w) {
        const long base = u + v + w;
        for (int da = 0; da < 4; ++da)
          for (int db = 0; db < 4; ++db) x(4 * da + db) = c[base + da * sa + db * sb];
        x = m * x;
        for (int da = 0; da < 4; ++da)
          for (int db = 0; db < 4; ++db) c[base + da * sa + db * sb] = x(4 * da + db);
      }
    }
  }
}

void DenseState::apply_unitary(const Matrix4cd& u, int a, int b) {
  apply_ptm_pair(ptm_of_unitary(u), a, b);
}

void DenseState::apply_noise(const NoiseSpec& noise, int q) {
  if (noise.kind == NoiseKind::None) return;
  apply_ptm_single(channel_ptm(noise), q);
}

void DenseState::apply_fired(NoiseKind kind, int q) {
  apply_ptm_single(fired_ptm(kind), q);
}

DistributionTable DenseState::distribution() const {
  const long size = 1L << n_;
  Eigen::VectorXd diag(size);
  for (long z = 0; z < size; ++z) {
    long index = 0;
    for (int q = 0; q < n_; ++q) {
      index = (index << 2) | (((z >> (n_ - 1 - q)) & 1) ? 3 : 0);
    }
    diag(z) = coeffs_(index);
  }
  // Walsh-Hadamard transform: P(b) = 2^-n sum_z c_z (-1)^{popcount(z & b)}.
  for (long len = 1; len < size; len <<= 1) {
    for (long i = 0; i < size; i += 2 * len) {
      for (long j = i; j < i + len; ++j) {
        double x = diag(j), y = diag(j + len);
        diag(j) = x + y;
        diag(j + len) = x - y;
      }
    }
  }
  diag /= static_cast<double>(size);
  for (long i = 0; i < size; ++i) {
    if (diag(i) < 0.0) {
      if (diag(i) < -1e-12) {
        throw integrity_error("negative diagonal probability " + std::to_string(diag(i)));
      }
      diag(i) = 0.0;
    }
  }
  diag /= diag.sum();
  return DistributionTable(n_, std::move(diag));
}

Eigen::MatrixXcd DenseState::matrix() const {
  // Per-qubit change of basis from pauli coefficients to vectorized |i><j|
  // entries, then un-interleaving of the (i, j) digit pairs.
  Eigen::VectorXcd v = coeffs_.cast<complex<double>>();
  Eigen::Matrix4cd f;
  // Columns: vec(I), vec(X), vec(Y), vec(Z) with vec index 2i + j.
  f << 1, 0, 0, 1,
       0, 1, -kI, 0,
       0, 1, kI, 0,
       1, 0, 0, -1;
  for (int q = 0; q < n_; ++q) {
    const long stride = 1L << (2 * (n_ - 1 - q));
    apply_digit_matrix<complex<double>, 4>(v.data(), v.size(), f, stride);
  }
  const long dim = 1L << n_;
  Eigen::MatrixXcd rho(dim, dim);
  for (long k = 0; k < v.size(); ++k) {
    long i = 0, j = 0;
    for (int q = 0; q < n_; ++q) {
      int digit = (k >> (2 * (n_ - 1 - q))) & 3;
      i = (i << 1) | (digit >> 1);
      j = (j << 1) | (digit & 1);
    }
    rho(i, j) = v(k);
  }
  rho /= static_cast<double>(dim);
  return rho;
}

void apply_dense_layer(DenseState& state, const Circuit& circuit, const GateLayer& layer,
                       const std::vector<int>& qubits, HeraldMode mode) {
  std::vector<int> local(circuit.num_qubits(), -1);
  for (size_t i = 0; i < qubits.size(); ++i) local[qubits[i]] = static_cast<int>(i);
  const NoiseSpec& noise = circuit.noise();
  for (const auto& pair : layer.pairs) {
    int a = local[pair.a], b = local[pair.b];
    if (a < 0 || b < 0) throw std::invalid_argument("gate endpoint outside simulated region");
    state.apply_unitary(circuit.gate_unitary(layer.layer_index, pair.index), a, b);
  }
  if (noise.is_heralded() && mode == HeraldMode::Trajectory) {
    for (size_t i = 0; i < qubits.size(); ++i) {
      if (circuit.herald_fired(layer.layer_index, qubits[i])) {
        state.apply_fired(noise.kind, static_cast<int>(i));
      }
    }
  } else if (!noise.is_trivial()) {
    for (size_t i = 0; i < qubits.size(); ++i) {
      state.apply_noise(noise, static_cast<int>(i));
    }
  }
}

DenseState evolve_region(const Circuit& circuit, const std::vector<int>& qubits,
                         const std::vector<GateLayer>& layers, InputState input, HeraldMode mode,
                         int max_qubits) {
  DenseState state(static_cast<int>(qubits.size()), input, max_qubits);
  for (const auto& layer : layers) {
    apply_dense_layer(state, circuit, layer, qubits, mode);
  }
  return state;
}

DenseState evolve(const Circuit& circuit, InputState input, HeraldMode mode, int max_qubits) {
  std::vector<int> all(circuit.num_qubits());
  for (int i = 0; i < circuit.num_qubits(); ++i) all[i] = i;
  return evolve_region(circuit, all, circuit.layers(), input, mode, max_qubits);
}

}  // namespace rcsim
