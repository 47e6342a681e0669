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

#include "rcsim/tableau.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rcsim/errors.hpp"

namespace rcsim {

namespace {

inline int popcount(uint64_t w) { return std::popcount(w); }

}  // namespace

PauliTableau::PauliTableau(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 1) throw std::invalid_argument("tableau needs at least one qubit");
}

PauliTableau PauliTableau::zero_state(int n) {
  PauliTableau t(n);
  t.bits_.assign(static_cast<size_t>(n) * 2 * t.words_, 0);
  t.signs_.assign(n, 0);
  for (int q = 0; q < n; ++q) {
    t.bits_[(static_cast<size_t>(q) * 2 + 1) * t.words_ + q / 64] |= uint64_t{1} << (q % 64);
  }
  return t;
}

PauliTableau PauliTableau::from_strings(int n, const std::vector<std::string>& rows) {
  PauliTableau t(n);
  for (const auto& row : rows) t.append_row(row);
  return t;
}

void PauliTableau::append_row(const std::string& pauli) {
  std::string body = pauli;
  uint8_t sign = 0;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    sign = body[0] == '-';
    body.erase(body.begin());
  }
  if (static_cast<int>(body.size()) != n_) {
    throw std::invalid_argument("pauli string length must equal qubit count");
  }
  size_t base = bits_.size();
  bits_.resize(base + 2 * words_, 0);
  signs_.push_back(sign);
  for (int q = 0; q < n_; ++q) {
    bool x = false, z = false;
    switch (body[q]) {
      case 'I': case '_': break;
      case 'X': x = true; break;
      case 'Z': z = true; break;
      case 'Y': x = z = true; break;
      default: throw std::invalid_argument("pauli characters must be I, X, Y or Z");
    }
    if (x) bits_[base + q / 64] |= uint64_t{1} << (q % 64);
    if (z) bits_[base + words_ + q / 64] |= uint64_t{1} << (q % 64);
  }
}

bool PauliTableau::x_bit(int row, int qubit) const {
  return (bits_[(static_cast<size_t>(row) * 2) * words_ + qubit / 64] >> (qubit % 64)) & 1;
}

bool PauliTableau::z_bit(int row, int qubit) const {
  return (bits_[(static_cast<size_t>(row) * 2 + 1) * words_ + qubit / 64] >> (qubit % 64)) & 1;
}

void PauliTableau::set_sign(int row, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  signs_[row] = sign == -1;
}

std::string PauliTableau::row_string(int row) const {
  std::string out;
  out.push_back(signs_[row] ? '-' : '+');
  for (int q = 0; q < n_; ++q) {
    bool x = x_bit(row, q), z = z_bit(row, q);
    out.push_back(x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
  }
  return out;
}

void PauliTableau::multiply_into(int dst, int src) {
  uint64_t* xd = &bits_[static_cast<size_t>(dst) * 2 * words_];
  uint64_t* zd = xd + words_;
  const uint64_t* xs = &bits_[static_cast<size_t>(src) * 2 * words_];
  const uint64_t* zs = xs + words_;
  // Phase exponent of the product, mod 4: +1 where dst's factor times src's
  // factor picks up i, -1 where it picks up -i.
  int64_t phase = 0;
  for (int w = 0; w < words_; ++w) {
    uint64_t x1 = xd[w], z1 = zd[w], x2 = xs[w], z2 = zs[w];
    uint64_t plus = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & z2 & ~x2) | (~x1 & z1 & x2 & z2);
    phase += popcount(plus) - popcount(minus);
    xd[w] = x1 ^ x2;
    zd[w] = z1 ^ z2;
  }
  phase += 2 * (signs_[dst] + signs_[src]);
  phase = ((phase % 4) + 4) % 4;
  if (phase % 2 != 0) throw integrity_error("anticommuting generators multiplied");
  signs_[dst] = static_cast<uint8_t>(phase / 2);
}

void PauliTableau::erase_rows(const std::vector<int>& rows) {
  std::vector<bool> drop(num_generators(), false);
  for (int r : rows)
    if (r >= 0) drop[r] = true;
  int out = 0;
  for (int r = 0; r < num_generators(); ++r) {
    if (drop[r]) continue;
    if (out != r) {
      std::copy_n(bits_.begin() + static_cast<size_t>(r) * 2 * words_, 2 * words_,
                  bits_.begin() + static_cast<size_t>(out) * 2 * words_);
      signs_[out] = signs_[r];
    }
    ++out;
  }
  bits_.resize(static_cast<size_t>(out) * 2 * words_);
  signs_.resize(out);
}

void PauliTableau::apply_clifford(const TwoQubitClifford& gate, int a, int b) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) {
    throw std::invalid_argument("qubit pair out of range");
  }
  for (int r = 0; r < num_generators(); ++r) {
    uint8_t x = static_cast<uint8_t>(x_bit(r, a) | (x_bit(r, b) << 1));
    uint8_t z = static_cast<uint8_t>(z_bit(r, a) | (z_bit(r, b) << 1));
    if (x == 0 && z == 0) continue;
    Pauli2 image = gate.conjugate(Pauli2{x, z, 0});
    uint64_t* xw = &bits_[static_cast<size_t>(r) * 2 * words_];
    uint64_t* zw = xw + words_;
    auto assign_bit = [](uint64_t* wds, int q, bool v) {
      uint64_t mask = uint64_t{1} << (q % 64);
      if (v)
        wds[q / 64] |= mask;
      else
        wds[q / 64] &= ~mask;
    };
    assign_bit(xw, a, image.x & 1);
    assign_bit(xw, b, image.x & 2);
    assign_bit(zw, a, image.z & 1);
    assign_bit(zw, b, image.z & 2);
    signs_[r] ^= static_cast<uint8_t>(image.phase >> 1);
  }
}

void PauliTableau::apply_h(int q) {
  for (int r = 0; r < num_generators(); ++r) {
    bool x = x_bit(r, q), z = z_bit(r, q);
    if (x && z) signs_[r] ^= 1;  // Y -> -Y
    if (x != z) {
      uint64_t mask = uint64_t{1} << (q % 64);
      bits_[(static_cast<size_t>(r) * 2) * words_ + q / 64] ^= mask;
      bits_[(static_cast<size_t>(r) * 2 + 1) * words_ + q / 64] ^= mask;
    }
  }
}

void PauliTableau::apply_s(int q) {
  for (int r = 0; r < num_generators(); ++r) {
    bool x = x_bit(r, q), z = z_bit(r, q);
    if (x && z) signs_[r] ^= 1;  // Y -> -X
    if (x) bits_[(static_cast<size_t>(r) * 2 + 1) * words_ + q / 64] ^= uint64_t{1} << (q % 64);
  }
}

void PauliTableau::apply_x(int q) {
  for (int r = 0; r < num_generators(); ++r) {
    if (z_bit(r, q)) signs_[r] ^= 1;
  }
}

void PauliTableau::restrict_to_identity_on(int q) {
  int pivot_x = -1;
  for (int r = 0; r < num_generators(); ++r) {
    if (x_bit(r, q)) {
      pivot_x = r;
      break;
    }
  }
  if (pivot_x >= 0) {
    for (int r = 0; r < num_generators(); ++r) {
      if (r != pivot_x && x_bit(r, q)) multiply_into(r, pivot_x);
    }
  }
  int pivot_z = -1;
  for (int r = 0; r < num_generators(); ++r) {
    if (r != pivot_x && z_bit(r, q)) {
      pivot_z = r;
      break;
    }
  }
  if (pivot_z >= 0) {
    for (int r = 0; r < num_generators(); ++r) {
      if (r != pivot_x && r != pivot_z && z_bit(r, q)) multiply_into(r, pivot_z);
    }
  }
  erase_rows({pivot_x, pivot_z});
}

void PauliTableau::apply_heralded_depolarizing(int q, bool fired) {
  if (q < 0 || q >= n_) throw std::invalid_argument("qubit out of range");
  if (!fired) return;
  restrict_to_identity_on(q);
}

void PauliTableau::apply_heralded_reset(int q, bool fired) {
  if (q < 0 || q >= n_) throw std::invalid_argument("qubit out of range");
  if (!fired) return;
  restrict_to_identity_on(q);
  std::string row(n_, 'I');
  row[q] = 'Z';
  append_row("+" + row);
}

PauliTableau PauliTableau::diagonal_subgroup() const {
  PauliTableau work = *this;
  std::vector<bool> pivoted(work.num_generators(), false);
  for (int q = 0; q < n_; ++q) {
    int pivot = -1;
    for (int r = 0; r < work.num_generators(); ++r) {
      if (!pivoted[r] && work.x_bit(r, q)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    pivoted[pivot] = true;
    for (int r = 0; r < work.num_generators(); ++r) {
      if (r != pivot && work.x_bit(r, q)) work.multiply_into(r, pivot);
    }
  }
  std::vector<int> drop;
  for (int r = 0; r < work.num_generators(); ++r) {
    if (pivoted[r]) drop.push_back(r);
  }
  work.erase_rows(drop);
  return work;
}

bool PauliTableau::is_diagonal() const {
  for (int r = 0; r < num_generators(); ++r) {
    const uint64_t* xw = &bits_[static_cast<size_t>(r) * 2 * words_];
    for (int w = 0; w < words_; ++w) {
      if (xw[w] != 0) return false;
    }
  }
  return true;
}

int PauliTableau::region_entropy(const std::vector<int>& region) const {
  if (!is_diagonal()) throw std::invalid_argument("region_entropy expects a diagonal tableau");
  std::vector<bool> inside(n_, false);
  for (int q : region) {
    if (q < 0 || q >= n_) throw std::invalid_argument("region qubit out of range");
    if (inside[q]) throw std::invalid_argument("duplicate region qubit");
    inside[q] = true;
  }
  PauliTableau work = *this;
  std::vector<bool> dropped(work.num_generators(), false);
  for (int q = 0; q < n_; ++q) {
    if (inside[q]) continue;
    int pivot = -1;
    for (int r = 0; r < work.num_generators(); ++r) {
      if (!dropped[r] && work.z_bit(r, q)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    dropped[pivot] = true;
    for (int r = 0; r < work.num_generators(); ++r) {
      if (!dropped[r] && work.z_bit(r, q)) work.multiply_into(r, pivot);
    }
  }
  int rank = 0;
  for (int r = 0; r < work.num_generators(); ++r) {
    if (dropped[r]) continue;
    bool empty = true;
    for (int q = 0; q < n_ && empty; ++q) {
      if (work.z_bit(r, q)) empty = false;
    }
    if (empty) {
      // A generating set never contains the identity; this means the input
      // rows were dependent (or -I is derivable).
      throw integrity_error(work.signs_[r] ? "-I derivable from generators"
                                           : "dependent generators in tableau");
    }
    ++rank;
  }
  return static_cast<int>(region.size()) - rank;
}

int PauliTableau::cmi(const std::vector<int>& x, const std::vector<int>& y,
                      const std::vector<int>& z) const {
  auto disjoint = [](const std::vector<int>& a, const std::vector<int>& b) {
    for (int u : a)
      for (int v : b)
        if (u == v) return false;
    return true;
  };
  if (!disjoint(x, y) || !disjoint(x, z) || !disjoint(y, z)) {
    throw std::invalid_argument("cmi regions must be disjoint");
  }
  PauliTableau diag = is_diagonal() ? *this : diagonal_subgroup();
  auto join = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
  };
  int hxy = diag.region_entropy(join(x, y));
  int hyz = diag.region_entropy(join(y, z));
  int hxyz = diag.region_entropy(join(join(x, y), z));
  int hy = y.empty() ? 0 : diag.region_entropy(y);
  int value = hxy + hyz - hxyz - hy;
  if (value < 0) throw integrity_error("negative stabilizer CMI");
  return value;
}

DistributionTable PauliTableau::conditional_distribution(
    const std::vector<int>& targets, const std::vector<int>& given,
    const std::vector<int>& given_values) const {
  if (given.size() != given_values.size()) {
    throw std::invalid_argument("given qubits and values must align");
  }
  for (size_t i = 1; i < targets.size(); ++i) {
    if (targets[i] <= targets[i - 1]) throw std::invalid_argument("targets must be ascending");
  }
  for (int q : targets) {
    for (int g : given) {
      if (q == g) throw std::invalid_argument("targets and given must be disjoint");
    }
  }
  PauliTableau diag = is_diagonal() ? *this : diagonal_subgroup();

  // Linear system M b = rhs over GF(2): row v from a generator +-P with
  // z-vector v demands (-1)^{v . b} = sign.
  struct Row {
    std::vector<uint64_t> v;
    int rhs;
  };
  std::vector<Row> rows(diag.num_generators());
  for (int r = 0; r < diag.num_generators(); ++r) {
    rows[r].v.assign(words_, 0);
    for (int w = 0; w < words_; ++w) {
      rows[r].v[w] = diag.bits_[(static_cast<size_t>(r) * 2 + 1) * words_ + w];
    }
    rows[r].rhs = diag.signs_[r];
  }

  auto get = [&](const Row& row, int q) { return (row.v[q / 64] >> (q % 64)) & 1; };
  auto clear = [&](Row& row, int q) { row.v[q / 64] &= ~(uint64_t{1} << (q % 64)); };

  // Substitute the conditioned bits.
  for (size_t j = 0; j < given.size(); ++j) {
    int q = given[j];
    int bit = given_values[j] & 1;
    for (auto& row : rows) {
      if (get(row, q)) {
        if (bit) row.rhs ^= 1;
        clear(row, q);
      }
    }
  }

  // Existentially eliminate every free (unassigned, non-target) qubit.
  std::vector<bool> is_target(n_, false);
  for (int q : targets) is_target[q] = true;
  std::vector<bool> is_given(n_, false);
  for (int q : given) is_given[q] = true;
  std::vector<bool> dead(rows.size(), false);
  for (int q = 0; q < n_; ++q) {
    if (is_target[q] || is_given[q]) continue;
    int pivot = -1;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (!dead[r] && get(rows[r], q)) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (!dead[r] && static_cast<int>(r) != pivot && get(rows[r], q)) {
        for (int w = 0; w < words_; ++w) rows[r].v[w] ^= rows[pivot].v[w];
        rows[r].rhs ^= rows[pivot].rhs;
      }
    }
    dead[pivot] = true;  // one equation is absorbed by the free variable
  }

  // Reduce the remaining system (supported on targets) to an independent set.
  std::vector<size_t> live;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (!dead[r]) live.push_back(r);
  }
  std::vector<size_t> basis;
  for (int q : targets) {
    int pivot = -1;
    for (size_t idx : live) {
      if (!dead[idx] && get(rows[idx], q)) {
        pivot = static_cast<int>(idx);
        break;
      }
    }
    if (pivot < 0) continue;
    for (size_t idx : live) {
      if (!dead[idx] && static_cast<int>(idx) != pivot && get(rows[idx], q)) {
        for (int w = 0; w < words_; ++w) rows[idx].v[w] ^= rows[pivot].v[w];
        rows[idx].rhs ^= rows[pivot].rhs;
      }
    }
    dead[pivot] = true;
    basis.push_back(pivot);
  }
  for (size_t idx : live) {
    if (dead[idx]) continue;
    // Fully reduced empty row: rhs 1 means the condition has probability 0.
    if (rows[idx].rhs) {
      if (given.empty()) throw integrity_error("-I derivable from generators");
      throw std::domain_error("conditioning on a zero-probability assignment");
    }
  }

  const int m = static_cast<int>(targets.size());
  const int rank = static_cast<int>(basis.size());
  const double p = 1.0 / static_cast<double>(1u << (m - rank));
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(1 << m);
  for (uint32_t t = 0; t < (1u << m); ++t) {
    bool ok = true;
    for (size_t idx : basis) {
      int parity = 0;
      for (int j = 0; j < m; ++j) {
        if (get(rows[idx], targets[j])) parity ^= (t >> (m - 1 - j)) & 1;
      }
      if (parity != rows[idx].rhs) {
        ok = false;
        break;
      }
    }
    if (ok) probs(t) = p;
  }
  return DistributionTable(m, std::move(probs));
}

DistributionTable PauliTableau::marginal_distribution(const std::vector<int>& targets) const {
  return conditional_distribution(targets, {}, {});
}

void PauliTableau::check_invariants() const {
  for (int r = 0; r < num_generators(); ++r) {
    for (int s = r + 1; s < num_generators(); ++s) {
      int sym = 0;
      for (int w = 0; w < words_; ++w) {
        uint64_t x1 = bits_[(static_cast<size_t>(r) * 2) * words_ + w];
        uint64_t z1 = bits_[(static_cast<size_t>(r) * 2 + 1) * words_ + w];
        uint64_t x2 = bits_[(static_cast<size_t>(s) * 2) * words_ + w];
        uint64_t z2 = bits_[(static_cast<size_t>(s) * 2 + 1) * words_ + w];
        sym += popcount(x1 & z2) + popcount(z1 & x2);
      }
      if (sym % 2 != 0) throw integrity_error("generators do not commute");
    }
  }
  // GF(2) independence of the (x|z) rows.
  std::vector<std::vector<uint64_t>> m;
  for (int r = 0; r < num_generators(); ++r) {
    m.emplace_back(bits_.begin() + static_cast<size_t>(r) * 2 * words_,
                   bits_.begin() + static_cast<size_t>(r + 1) * 2 * words_);
  }
  int rank = 0;
  for (int col = 0; col < 2 * n_; ++col) {
    int word = (col < n_) ? col / 64 : words_ + (col - n_) / 64;
    int bit = (col < n_) ? col % 64 : (col - n_) % 64;
    int pivot = -1;
    for (size_t r = rank; r < m.size(); ++r) {
      if ((m[r][word] >> bit) & 1) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (static_cast<int>(r) != rank && ((m[r][word] >> bit) & 1)) {
        for (int w = 0; w < 2 * words_; ++w) m[r][w] ^= m[rank][w];
      }
    }
    ++rank;
    if (rank == static_cast<int>(m.size())) break;
  }
  if (rank != num_generators()) throw integrity_error("dependent generators in tableau");
}

void apply_stabilizer_layer(PauliTableau& tableau, const Circuit& circuit, const GateLayer& layer,
                            const std::vector<int>& qubits) {
  const NoiseSpec& noise = circuit.noise();
  if (!noise.is_heralded() && noise.kind != NoiseKind::None) {
    throw std::invalid_argument("stabilizer backend supports heralded or no noise only");
  }
  std::vector<int> local(circuit.num_qubits(), -1);
  for (size_t i = 0; i < qubits.size(); ++i) local[qubits[i]] = static_cast<int>(i);
  for (const auto& pair : layer.pairs) {
    int a = local[pair.a], b = local[pair.b];
    if (a < 0 || b < 0) throw std::invalid_argument("gate endpoint outside simulated region");
    tableau.apply_clifford(circuit.gate_clifford(layer.layer_index, pair.index), a, b);
  }
  if (noise.is_heralded()) {
    for (size_t i = 0; i < qubits.size(); ++i) {
      if (circuit.herald_fired(layer.layer_index, qubits[i])) {
        if (noise.kind == NoiseKind::HeraldedReset) {
          tableau.apply_heralded_reset(static_cast<int>(i), true);
        } else {
          tableau.apply_heralded_depolarizing(static_cast<int>(i), true);
        }
      }
    }
  }
}

PauliTableau run_stabilizer_circuit(const Circuit& circuit) {
  std::vector<int> all(circuit.num_qubits());
  for (int i = 0; i < circuit.num_qubits(); ++i) all[i] = i;
  return run_stabilizer_region(circuit, all, circuit.layers());
}

PauliTableau run_stabilizer_region(const Circuit& circuit, const std::vector<int>& qubits,
                                   const std::vector<GateLayer>& layers) {
  PauliTableau tableau = PauliTableau::zero_state(static_cast<int>(qubits.size()));
  for (const auto& layer : layers) {
    apply_stabilizer_layer(tableau, circuit, layer, qubits);
  }
  return tableau;
}

}  // namespace rcsim
