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

#include "rcsim/mpdo.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "rcsim/errors.hpp"
#include "rcsim/svd.hpp"

namespace rcsim {

namespace {

using Eigen::MatrixXcd;
using Eigen::RowVectorXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

constexpr double kSpectrumZeroTol = 1e-14;

// (l*4, r) storage <-> (l, 4r) "right" form with column p * r + rr.
MatrixXcd to_right_form(const MatrixXcd& a) {
  const long l = a.rows() / 4, r = a.cols();
  MatrixXcd b(l, 4 * r);
  for (long p = 0; p < 4; ++p)
    for (long i = 0; i < l; ++i)
      for (long c = 0; c < r; ++c) b(i, p * r + c) = a(i * 4 + p, c);
  return b;
}

MatrixXcd from_right_form(const MatrixXcd& b, long r) {
  const long l = b.rows();
  MatrixXcd a(l * 4, r);
  for (long p = 0; p < 4; ++p)
    for (long i = 0; i < l; ++i)
      for (long c = 0; c < r; ++c) a(i * 4 + p, c) = b(i, p * r + c);
  return a;
}

// Physical-index slice: rows l*4 + p for fixed p.
MatrixXcd phys_slice(const MatrixXcd& a, int p) {
  const long l = a.rows() / 4, r = a.cols();
  MatrixXcd out(l, r);
  for (long i = 0; i < l; ++i) out.row(i) = a.row(i * 4 + p);
  return out;
}

int trimmed_rank(const VectorXd& s) {
  if (s.size() == 0) return 0;
  const double cutoff = s(0) * kSpectrumZeroTol;
  int k = 0;
  while (k < s.size() && s(k) > cutoff) ++k;
  return std::max(k, 1);
}

}  // namespace

Matrix16cd build_superop(const Eigen::Matrix4cd& gate, const NoiseSpec& noise) {
  if (noise.is_heralded()) {
    throw std::invalid_argument("heralded noise has no averaged tensor-train superop here; "
                                "use the stabilizer track");
  }
  if ((gate * gate.adjoint() - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("gate matrix is not unitary");
  }
  auto kraus = kraus_operators(noise);
  Matrix16cd m;
  for (int ipk = 0; ipk < 2; ++ipk)
  for (int ipk1 = 0; ipk1 < 2; ++ipk1)
  for (int jpk = 0; jpk < 2; ++jpk)
  for (int jpk1 = 0; jpk1 < 2; ++jpk1) {
    Eigen::Matrix4cd e = Eigen::Matrix4cd::Zero();
    e(ipk * 2 + ipk1, jpk * 2 + jpk1) = 1.0;
    Eigen::Matrix4cd w = gate * e * gate.adjoint();
    // Noise on each qubit of the pair.
    Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
    for (const auto& k : kraus) {
      Eigen::Matrix4cd kfull = Eigen::Matrix4cd::Zero();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) kfull.block<2, 2>(2 * i, 2 * j) = k(i, j) * Eigen::Matrix2cd::Identity();
      acc += kfull * w * kfull.adjoint();
    }
    w = acc;
    acc.setZero();
    for (const auto& k : kraus) {
      Eigen::Matrix4cd kfull = Eigen::Matrix4cd::Zero();
      kfull.block<2, 2>(0, 0) = k;
      kfull.block<2, 2>(2, 2) = k;
      acc += kfull * w * kfull.adjoint();
    }
    w = acc;
    const int col = (2 * ipk + jpk) * 4 + (2 * ipk1 + jpk1);
    for (int ik = 0; ik < 2; ++ik)
      for (int ik1 = 0; ik1 < 2; ++ik1)
        for (int jk = 0; jk < 2; ++jk)
          for (int jk1 = 0; jk1 < 2; ++jk1) {
            m((2 * ik + jk) * 4 + (2 * ik1 + jk1), col) = w(ik * 2 + ik1, jk * 2 + jk1);
          }
  }
  return m;
}

Eigen::Matrix4cd build_single_superop(const NoiseSpec& noise) {
  if (noise.is_heralded()) {
    throw std::invalid_argument("heralded noise has no averaged tensor-train superop here");
  }
  return channel_superop(noise);
}

struct MpdoState::SamplingCache {
  std::vector<MatrixXcd> m0, m3, msum;
  std::vector<VectorXcd> env;  // env[k] = msum_k ... msum_{n-1} applied to 1
};

void MpdoState::invalidate_cache() { cache_.reset(); }

const MpdoState::SamplingCache& MpdoState::cache() const {
  if (!cache_) {
    auto c = std::make_shared<SamplingCache>();
    c->m0.reserve(n_);
    c->m3.reserve(n_);
    c->msum.reserve(n_);
    for (int k = 0; k < n_; ++k) {
      c->m0.push_back(phys_slice(sites_[k], 0));
      c->m3.push_back(phys_slice(sites_[k], 3));
      c->msum.push_back(c->m0.back() + c->m3.back());
    }
    c->env.assign(n_ + 1, VectorXcd());
    c->env[n_] = VectorXcd::Ones(1);
    for (int k = n_ - 1; k >= 0; --k) c->env[k] = c->msum[k] * c->env[k + 1];
    cache_ = std::move(c);
  }
  return *cache_;
}

MpdoState::MpdoState(int n, int chi_max) : n_(n), chi_max_(chi_max) {
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  if (chi_max < 1) throw std::invalid_argument("chi_max must be positive");
  sites_.resize(n);
  for (int k = 0; k < n; ++k) {
    sites_[k] = MatrixXcd::Zero(4, 1);
    sites_[k](0, 0) = 1.0;  // I = 0, i.e. |0><0|
  }
  spectra_.assign(std::max(n - 1, 0), VectorXd::Ones(1));
  center_ = 0;
}

int MpdoState::bond_dimension(int bond) const {
  if (bond < 0 || bond + 1 >= n_) throw std::invalid_argument("bond out of range");
  return static_cast<int>(sites_[bond].cols());
}

int MpdoState::max_bond_dimension() const {
  int best = 1;
  for (int b = 0; b + 1 < n_; ++b) best = std::max(best, bond_dimension(b));
  return best;
}

void MpdoState::canonicalize_to(int k) {
  if (k < 0 || k >= n_) throw std::invalid_argument("site out of range");
  if (center_ < 0) {
    // Unknown structure: left-canonicalize everything, center lands at n-1.
    for (int c = 0; c + 1 < n_; ++c) {
      ThinSvd svd = thin_svd(sites_[c]);
      int keep = trimmed_rank(svd.singular);
      sites_[c] = svd.u.leftCols(keep);
      MatrixXcd carry =
          svd.singular.head(keep).asDiagonal() * svd.vt.topRows(keep);
      MatrixXcd right = to_right_form(sites_[c + 1]);
      sites_[c + 1] = from_right_form(carry * right, sites_[c + 1].cols());
      spectra_[c] = svd.singular.head(keep);
    }
    center_ = n_ - 1;
  }
  while (center_ < k) {
    const int c = center_;
    ThinSvd svd = thin_svd(sites_[c]);
    int keep = trimmed_rank(svd.singular);
    sites_[c] = svd.u.leftCols(keep);
    MatrixXcd carry = svd.singular.head(keep).asDiagonal() * svd.vt.topRows(keep);
    sites_[c + 1] = from_right_form(carry * to_right_form(sites_[c + 1]), sites_[c + 1].cols());
    spectra_[c] = svd.singular.head(keep);
    ++center_;
  }
  while (center_ > k) {
    const int c = center_;
    MatrixXcd b = to_right_form(sites_[c]);
    ThinSvd svd = thin_svd(b);
    int keep = trimmed_rank(svd.singular);
    sites_[c] = from_right_form(svd.vt.topRows(keep), sites_[c].cols());
    MatrixXcd carry = svd.u.leftCols(keep) * svd.singular.head(keep).asDiagonal();
    sites_[c - 1] = sites_[c - 1] * carry;
    spectra_[c - 1] = svd.singular.head(keep);
    --center_;
  }
}

double MpdoState::trace() const {
  RowVectorXcd v = RowVectorXcd::Ones(1);
  for (int k = 0; k < n_; ++k) {
    v = v * (phys_slice(sites_[k], 0) + phys_slice(sites_[k], 3));
  }
  return v(0).real();
}

void MpdoState::apply_superop(const Matrix16cd& m, int k) {
  if (k < 0 || k + 1 >= n_) throw std::invalid_argument("site pair out of range");
  invalidate_cache();
  canonicalize_to(k);
  const long l = sites_[k].rows() / 4;
  const long r = sites_[k + 1].cols();
  // theta: (l*4, 4*r) with row l*4 + p1 and column p2*r + rr.
  MatrixXcd theta = sites_[k] * to_right_form(sites_[k + 1]);
  // Move both physical indices into one axis for the superop contraction.
  MatrixXcd packed(16, l * r);
  for (long p1 = 0; p1 < 4; ++p1)
    for (long p2 = 0; p2 < 4; ++p2)
      for (long i = 0; i < l; ++i)
        for (long c = 0; c < r; ++c)
          packed(p1 * 4 + p2, i * r + c) = theta(i * 4 + p1, p2 * r + c);
  packed = m * packed;
  for (long p1 = 0; p1 < 4; ++p1)
    for (long p2 = 0; p2 < 4; ++p2)
      for (long i = 0; i < l; ++i)
        for (long c = 0; c < r; ++c)
          theta(i * 4 + p1, p2 * r + c) = packed(p1 * 4 + p2, i * r + c);

  ThinSvd svd = thin_svd(theta);
  if (svd.singular.size() == 0 || !(svd.singular(0) > 0.0)) {
    throw std::runtime_error("SVD produced an empty spectrum at site " + std::to_string(k));
  }
  int keep = std::min(trimmed_rank(svd.singular), chi_max_);
  double discarded = 0.0;
  for (int i = keep; i < svd.singular.size(); ++i) {
    discarded += svd.singular(i) * svd.singular(i);
  }
  truncation_weight_ += discarded;
  sites_[k] = svd.u.leftCols(keep);
  MatrixXcd carry = svd.singular.head(keep).asDiagonal() * svd.vt.topRows(keep);
  sites_[k + 1] = from_right_form(carry, r);
  spectra_[k] = svd.singular.head(keep);
  center_ = k + 1;

  const double tr = trace();
  if (!(std::abs(tr) > 1e-300)) {
    throw std::runtime_error("state trace vanished at site " + std::to_string(k));
  }
  sites_[k + 1] /= tr;
  spectra_[k] /= std::abs(tr);
  last_trace_ = tr;
}

void MpdoState::apply_gate(const Eigen::Matrix4cd& u, int k, const NoiseSpec& noise) {
  apply_superop(build_superop(u, noise), k);
}

void MpdoState::apply_single_site(const Eigen::Matrix4cd& superop, int k) {
  if (k < 0 || k >= n_) throw std::invalid_argument("site out of range");
  invalidate_cache();
  canonicalize_to(k);
  const long l = sites_[k].rows() / 4;
  for (long i = 0; i < l; ++i) {
    sites_[k].block(i * 4, 0, 4, sites_[k].cols()) =
        superop * sites_[k].block(i * 4, 0, 4, sites_[k].cols());
  }
}

double MpdoState::diagonal_prob(const std::vector<int>& bits) const {
  if (static_cast<int>(bits.size()) > n_) throw std::invalid_argument("too many bits");
  const auto& c = cache();
  RowVectorXcd v = RowVectorXcd::Ones(1);
  for (size_t k = 0; k < bits.size(); ++k) {
    v = v * (bits[k] ? c.m3[k] : c.m0[k]);
  }
  double p = (v * c.env[bits.size()])(0).real();
  if (p < 0.0) {
    if (p < -1e-10) ++negativity_warnings_;
    p = 0.0;
  }
  return p;
}

double MpdoState::mpoee(int bond) {
  if (bond < 0 || bond + 1 >= n_) throw std::invalid_argument("bond out of range");
  canonicalize_to(bond);
  // Refresh the spectrum at this bond without moving weight permanently.
  ThinSvd svd = thin_svd(sites_[bond]);
  int keep = trimmed_rank(svd.singular);
  VectorXd s = svd.singular.head(keep);
  double norm = s.squaredNorm();
  if (!(norm > 0.0)) throw std::runtime_error("all-zero bond spectrum");
  double h = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    double w = s(i) * s(i) / norm;
    if (w > 0.0) h -= w * std::log2(w);
  }
  return h;
}

double MpdoState::conditional_walk(const std::vector<int>& region, std::vector<int>* bits,
                                   CounterRng* rng) const {
  const auto& c = cache();
  RowVectorXcd v = RowVectorXcd::Ones(1);
  double h_sum = 0.0;
  size_t ri = 0;
  const int last = region.empty() ? -1 : region.back();
  for (int k = 0; k <= last; ++k) {
    if (ri < region.size() && region[ri] == k) {
      double p0 = (v * c.m0[k] * c.env[k + 1])(0).real();
      double p1 = (v * c.m3[k] * c.env[k + 1])(0).real();
      if (p0 < 0.0) {
        if (p0 < -1e-10) ++negativity_warnings_;
        p0 = 0.0;
      }
      if (p1 < 0.0) {
        if (p1 < -1e-10) ++negativity_warnings_;
        p1 = 0.0;
      }
      const double norm = p0 + p1;
      double q0 = 0.5, q1 = 0.5;
      if (norm >= 1e-300) {
        q0 = p0 / norm;
        q1 = p1 / norm;
      }
      if (q0 > 0.0) h_sum -= q0 * std::log2(q0);
      if (q1 > 0.0) h_sum -= q1 * std::log2(q1);
      int bit;
      if (rng) {
        bit = rng->uniform_double() < q0 ? 0 : 1;
        bits->push_back(bit);
      } else {
        bit = (*bits)[ri];
      }
      v = v * (bit ? c.m3[k] : c.m0[k]);
      const double chosen = bit ? p1 : p0;
      if (chosen >= 1e-300) v /= chosen;
      ++ri;
    } else {
      v = v * c.msum[k];
    }
  }
  return h_sum;
}

McEstimate MpdoState::mc_entropy(const std::vector<int>& region, int num_samples,
                                 CounterRng& rng) const {
  if (num_samples < 1) throw std::invalid_argument("need at least one sample");
  for (size_t i = 1; i < region.size(); ++i) {
    if (region[i] <= region[i - 1]) throw std::invalid_argument("region must be ascending");
  }
  McEstimate est;
  est.samples = num_samples;
  if (region.empty()) return est;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < num_samples; ++i) {
    std::vector<int> bits;
    double h = conditional_walk(region, &bits, &rng);
    sum += h;
    sq += h * h;
  }
  est.mean = sum / num_samples;
  if (num_samples > 1) {
    double var = (sq - sum * sum / num_samples) / (num_samples - 1.0);
    est.stderr_ = std::sqrt(std::max(var, 0.0) / num_samples);
  }
  return est;
}

McEstimate MpdoState::mc_cmi(const std::vector<int>& x, const std::vector<int>& y,
                             const std::vector<int>& z, int num_samples, CounterRng& rng) const {
  McEstimate est;
  est.samples = num_samples;
  if (x.empty() || z.empty()) return est;  // I(empty : Z | Y) = 0 exactly

  auto sorted_union = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
  };
  std::vector<int> xy = sorted_union(x, y);
  std::vector<int> yz = sorted_union(y, z);
  std::vector<int> xyz = sorted_union(xy, z);
  auto restrict_bits = [&](const std::vector<int>& bits, const std::vector<int>& sub) {
    std::vector<int> out;
    out.reserve(sub.size());
    size_t j = 0;
    for (size_t i = 0; i < xyz.size(); ++i) {
      if (j < sub.size() && xyz[i] == sub[j]) {
        out.push_back(bits[i]);
        ++j;
      }
    }
    return out;
  };

  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < num_samples; ++i) {
    std::vector<int> bits;
    double h_xyz = conditional_walk(xyz, &bits, &rng);
    std::vector<int> bits_xy = restrict_bits(bits, xy);
    std::vector<int> bits_yz = restrict_bits(bits, yz);
    double h_xy = conditional_walk(xy, &bits_xy, nullptr);
    double h_yz = conditional_walk(yz, &bits_yz, nullptr);
    double h_y = 0.0;
    if (!y.empty()) {
      std::vector<int> bits_y = restrict_bits(bits, y);
      h_y = conditional_walk(y, &bits_y, nullptr);
    }
    double value = h_xy + h_yz - h_xyz - h_y;
    sum += value;
    sq += value * value;
  }
  est.mean = sum / num_samples;
  if (num_samples > 1) {
    double var = (sq - sum * sum / num_samples) / (num_samples - 1.0);
    est.stderr_ = std::sqrt(std::max(var, 0.0) / num_samples);
  }
  return est;
}

void MpdoState::save(const std::string& path) const {
  nlohmann::json header;
  header["n"] = n_;
  header["chi_max"] = chi_max_;
  header["center"] = center_;
  header["trace"] = last_trace_;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << header.dump() << "\n";
  for (const auto& site : sites_) {
    uint64_t shape[3] = {static_cast<uint64_t>(site.rows() / 4), 4,
                         static_cast<uint64_t>(site.cols())};
    out.write(reinterpret_cast<const char*>(shape), sizeof(shape));
    const long l = site.rows() / 4, r = site.cols();
    for (long i = 0; i < l; ++i)
      for (long p = 0; p < 4; ++p)
        for (long c = 0; c < r; ++c) {
          double re = site(i * 4 + p, c).real();
          double im = site(i * 4 + p, c).imag();
          out.write(reinterpret_cast<const char*>(&re), sizeof(double));
          out.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

MpdoState MpdoState::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string header_line;
  std::getline(in, header_line);
  nlohmann::json header = nlohmann::json::parse(header_line);
  MpdoState state(header.at("n").get<int>(), header.at("chi_max").get<int>());
  state.center_ = header.at("center").get<int>();
  state.last_trace_ = header.at("trace").get<double>();
  for (int k = 0; k < state.n_; ++k) {
    uint64_t shape[3];
    in.read(reinterpret_cast<char*>(shape), sizeof(shape));
    if (!in || shape[1] != 4) throw std::runtime_error("corrupt checkpoint: " + path);
    MatrixXcd site(shape[0] * 4, shape[2]);
    for (uint64_t i = 0; i < shape[0]; ++i)
      for (uint64_t p = 0; p < 4; ++p)
        for (uint64_t c = 0; c < shape[2]; ++c) {
          double re, im;
          in.read(reinterpret_cast<char*>(&re), sizeof(double));
          in.read(reinterpret_cast<char*>(&im), sizeof(double));
          site(i * 4 + p, c) = complex<double>(re, im);
        }
    if (!in) throw std::runtime_error("corrupt checkpoint: " + path);
    state.sites_[k] = std::move(site);
  }
  state.spectra_.assign(std::max(state.n_ - 1, 0), VectorXd::Ones(1));
  state.invalidate_cache();
  return state;
}

void apply_mpdo_layer(MpdoState& state, const Circuit& circuit, const GateLayer& layer) {
  const int n = state.num_qubits();
  const NoiseSpec& noise = circuit.noise();
  Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  std::vector<int> gate_at(n, -1);
  std::vector<bool> flipped(n, false);
  std::vector<bool> covered(n, false);
  for (const auto& pair : layer.pairs) {
    if (std::abs(pair.a - pair.b) != 1) {
      throw std::invalid_argument("tensor-train evolution needs nearest-neighbor pairs");
    }
    int lo = std::min(pair.a, pair.b);
    gate_at[lo] = pair.index;
    flipped[lo] = pair.a > pair.b;
    covered[pair.a] = covered[pair.b] = true;
  }
  for (int k = 0; k < n; ++k) {
    if (gate_at[k] >= 0) {
      Eigen::Matrix4cd u = circuit.gate_unitary(layer.layer_index, gate_at[k]);
      if (flipped[k]) u = swap * u * swap;
      state.apply_gate(u, k, noise);
    } else if (!covered[k] && !noise.is_trivial()) {
      state.apply_single_site(build_single_superop(noise), k);
    }
  }
}

MpdoState run_mpdo_circuit(const Circuit& circuit, int chi_max) {
  MpdoState state(circuit.num_qubits(), chi_max);
  for (const auto& layer : circuit.layers()) {
    apply_mpdo_layer(state, circuit, layer);
  }
  return state;
}

}  // namespace rcsim
