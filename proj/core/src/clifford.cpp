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

#include "rcsim/clifford.hpp"

#include <array>
#include <stdexcept>

namespace rcsim {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector4cd;
using std::complex;

const complex<double> kI(0.0, 1.0);

// Phase exponent of sigma_p * sigma_q = i^g sigma_{p xor q}, with paulis
// encoded as p = x + 2z (I=0, X=1, Z=2, Y=3).
constexpr uint8_t kMulPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 3, 1},
    {0, 1, 0, 3},
    {0, 3, 1, 0},
};

inline int pauli_code(const Pauli2& p, int slot) {
  return ((p.x >> slot) & 1) + 2 * ((p.z >> slot) & 1);
}

Matrix2cd one_qubit_pauli(int code) {
  Matrix2cd m;
  switch (code) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 1, 0, 0, -1; break;
    case 3: m << 0, -kI, kI, 0; break;
    default: throw std::logic_error("bad pauli code");
  }
  return m;
}

complex<double> i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Enumerates the 15 non-identity two-qubit Paulis in a fixed order.
std::array<Pauli2, 15> nonidentity_paulis() {
  std::array<Pauli2, 15> out;
  int k = 0;
  for (uint8_t x = 0; x < 4; ++x)
    for (uint8_t z = 0; z < 4; ++z)
      if (x != 0 || z != 0) out[k++] = Pauli2{x, z, 0};
  return out;
}

}  // namespace

bool Pauli2::commutes_with(const Pauli2& other) const {
  int anti = __builtin_popcount(x & other.z) + __builtin_popcount(z & other.x);
  return anti % 2 == 0;
}

Pauli2& Pauli2::operator*=(const Pauli2& other) {
  int ph = phase + other.phase;
  for (int slot = 0; slot < 2; ++slot) {
    ph += kMulPhase[pauli_code(*this, slot)][pauli_code(other, slot)];
  }
  x ^= other.x;
  z ^= other.z;
  phase = static_cast<uint8_t>(ph % 4);
  return *this;
}

int Pauli2::sign() const {
  if (phase == 0) return 1;
  if (phase == 2) return -1;
  throw std::logic_error("pauli is not Hermitian (phase i or -i)");
}

Matrix4cd Pauli2::matrix() const {
  Matrix4cd m = Matrix4cd::Zero();
  Matrix2cd a = one_qubit_pauli(pauli_code(*this, 0));
  Matrix2cd b = one_qubit_pauli(pauli_code(*this, 1));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return i_power(phase) * m;
}

Pauli2 TwoQubitClifford::conjugate(const Pauli2& p) const {
  // Decompose the qubit factors as X^x Z^z; each Y contributes a factor i.
  int y_count = __builtin_popcount(p.x & p.z);
  Pauli2 result{};  // identity, phase 0
  if (p.x & 1) result *= x1;
  if (p.z & 1) result *= z1;
  if (p.x & 2) result *= x2;
  if (p.z & 2) result *= z2;
  result.phase = static_cast<uint8_t>((result.phase + p.phase + y_count) % 4);
  return result;
}

Matrix4cd TwoQubitClifford::unitary() const {
  // |psi_00> is the joint +1 eigenvector of the Z images; the other columns
  // follow by applying X images.
  Matrix4cd p = 0.25 * (Matrix4cd::Identity() + z1.matrix()) *
                (Matrix4cd::Identity() + z2.matrix());
  int best = 0;
  double best_norm = -1.0;
  for (int c = 0; c < 4; ++c) {
    double nn = p.col(c).norm();
    if (nn > best_norm) {
      best_norm = nn;
      best = c;
    }
  }
  if (best_norm < 1e-9) throw std::logic_error("invalid clifford images: zero projector");
  Vector4cd psi = p.col(best) / best_norm;
  for (int c = 0; c < 4; ++c) {
    if (std::abs(psi(c)) > 1e-9) {
      psi *= std::abs(psi(c)) / psi(c);
      break;
    }
  }
  Matrix4cd xa = x1.matrix();
  Matrix4cd xb = x2.matrix();
  Matrix4cd u;
  u.col(0) = psi;
  u.col(1) = xb * psi;
  u.col(2) = xa * psi;
  u.col(3) = xa * (xb * psi);
  return u;
}

TwoQubitClifford TwoQubitClifford::from_unitary(const Matrix4cd& u) {
  constexpr double kTol = 1e-8;
  if ((u * u.adjoint() - Matrix4cd::Identity()).cwiseAbs().maxCoeff() > kTol) {
    throw std::invalid_argument("matrix is not unitary");
  }
  auto image_of = [&](const Pauli2& gen) {
    Matrix4cd conj = u * gen.matrix() * u.adjoint();
    // Match against all 64 signed/phased paulis.
    for (uint8_t x = 0; x < 4; ++x) {
      for (uint8_t z = 0; z < 4; ++z) {
        for (uint8_t ph = 0; ph < 4; ++ph) {
          Pauli2 cand{x, z, ph};
          if ((conj - cand.matrix()).cwiseAbs().maxCoeff() < kTol) {
            if (ph % 2 != 0) throw std::invalid_argument("non-Hermitian pauli image");
            return cand;
          }
        }
      }
    }
    throw std::invalid_argument("matrix is not Clifford: image is not a pauli");
  };
  TwoQubitClifford g;
  g.x1 = image_of(Pauli2{1, 0, 0});
  g.z1 = image_of(Pauli2{0, 1, 0});
  g.x2 = image_of(Pauli2{2, 0, 0});
  g.z2 = image_of(Pauli2{0, 2, 0});
  return g;
}

TwoQubitClifford TwoQubitClifford::identity() {
  return {Pauli2{1, 0, 0}, Pauli2{0, 1, 0}, Pauli2{2, 0, 0}, Pauli2{0, 2, 0}};
}

TwoQubitClifford TwoQubitClifford::cnot() {
  // X1 -> X1X2, Z1 -> Z1, X2 -> X2, Z2 -> Z1Z2.
  return {Pauli2{3, 0, 0}, Pauli2{0, 1, 0}, Pauli2{2, 0, 0}, Pauli2{0, 3, 0}};
}

TwoQubitClifford TwoQubitClifford::cz() {
  return {Pauli2{1, 2, 0}, Pauli2{0, 1, 0}, Pauli2{2, 1, 0}, Pauli2{0, 2, 0}};
}

TwoQubitClifford TwoQubitClifford::swap_gate() {
  return {Pauli2{2, 0, 0}, Pauli2{0, 2, 0}, Pauli2{1, 0, 0}, Pauli2{0, 1, 0}};
}

TwoQubitClifford TwoQubitClifford::h(int slot) {
  TwoQubitClifford g = identity();
  uint8_t m = slot == 0 ? 1 : 2;
  (slot == 0 ? g.x1 : g.x2) = Pauli2{0, m, 0};
  (slot == 0 ? g.z1 : g.z2) = Pauli2{m, 0, 0};
  return g;
}

TwoQubitClifford TwoQubitClifford::s(int slot) {
  TwoQubitClifford g = identity();
  uint8_t m = slot == 0 ? 1 : 2;
  (slot == 0 ? g.x1 : g.x2) = Pauli2{m, m, 0};  // X -> Y
  return g;
}

TwoQubitClifford TwoQubitClifford::x(int slot) {
  TwoQubitClifford g = identity();
  uint8_t m = slot == 0 ? 1 : 2;
  (slot == 0 ? g.z1 : g.z2) = Pauli2{0, m, 2};  // Z -> -Z
  return g;
}

TwoQubitClifford random_two_qubit_clifford(CounterRng& rng) {
  static const auto all = nonidentity_paulis();
  auto pick = [&rng](const std::vector<Pauli2>& candidates) {
    Pauli2 p = candidates[rng.uniform_below(candidates.size())];
    p.phase = rng.uniform_below(2) ? 2 : 0;
    return p;
  };

  std::vector<Pauli2> cand;
  cand.assign(all.begin(), all.end());
  TwoQubitClifford g;
  g.x1 = pick(cand);  // 15 * 2 options

  cand.clear();
  for (const auto& p : all)
    if (!p.commutes_with(g.x1)) cand.push_back(p);
  g.z1 = pick(cand);  // 8 * 2

  cand.clear();
  for (const auto& p : all)
    if (p.commutes_with(g.x1) && p.commutes_with(g.z1)) cand.push_back(p);
  g.x2 = pick(cand);  // 3 * 2

  cand.clear();
  for (const auto& p : all)
    if (p.commutes_with(g.x1) && p.commutes_with(g.z1) && !p.commutes_with(g.x2))
      cand.push_back(p);
  g.z2 = pick(cand);  // 2 * 2

  return g;
}

Eigen::MatrixXcd random_haar_unitary(int dim, CounterRng& rng) {
  Eigen::MatrixXcd a(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i)
      a(i, j) = complex<double>(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    complex<double> d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace rcsim
