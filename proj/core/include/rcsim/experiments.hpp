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

#ifndef RCSIM_EXPERIMENTS_HPP
#define RCSIM_EXPERIMENTS_HPP

#include <functional>
#include <string>
#include <vector>

#include "rcsim/circuit.hpp"

namespace rcsim {

enum class ExperimentKind { CmiScan, MpoeeBench, PatchSample, Validate };

/// Batch-driver configuration; parsed from strict JSON (unknown fields are
/// rejected). Sweep axes default to the descriptor's own depth/gamma.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Validate;
  CircuitDescriptor descriptor;
  std::vector<int> depths;
  std::vector<double> gammas;
  std::vector<int> ells{1};
  std::vector<int> chis{64};
  int realizations = 1;
  int mc_samples = 1000;
  std::string out;
  int threads = 0;  // 0 = hardware concurrency
  int x_size = 2;   // linear size of the central region X
  std::string engine = "auto";  // auto | dense | stabilizer | mpdo
  bool smooth_depth_pairs = false;
  // patch_sample only:
  int d_star = -1;  // -1 = full depth
  int samples = 1000;
  std::string backend = "dense";

  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
};

struct CmiScanRow {
  std::string model;
  int n = 0;
  int depth = 0;
  double gamma = 0.0;
  int ell = 0;
  double mean_cmi = 0.0;
  double stderr_ = 0.0;
  int realizations = 0;
};

std::vector<CmiScanRow> run_cmi_scan(const ExperimentConfig& config);

struct MpoeeBenchRow {
  int n = 0;
  int depth = 0;
  double gamma = 0.0;
  int chi = 0;
  int cut = 0;
  double mpoee = 0.0;
};

std::vector<MpoeeBenchRow> run_mpoee_bench(const ExperimentConfig& config);

struct PatchSampleResult {
  std::vector<std::string> bitstrings;
  std::string sidecar_json;
};

PatchSampleResult run_patch_sample(const ExperimentConfig& config);

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string diagnostics;  // JSON array of per-case records
};

struct ValidationReport {
  std::vector<SuiteResult> suites;
  bool all_pass = false;
  std::string to_json() const;
};

ValidationReport run_validate(const ExperimentConfig& config);

/// The central region X of the CMI scans: x_size qubits (1D) or an
/// x_size * x_size block (2D) in the middle of the lattice.
std::vector<int> central_region(const GridGeometry& geometry, int x_size);

/// Qubits at lattice distance >= ell from X.
std::vector<int> far_region(const GridGeometry& geometry, const std::vector<int>& x, int ell);

/// Deterministic worker pool: fn(i) runs for i in [0, count), results merged
/// by index regardless of thread count.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

/// CSV serialization (header row plus one row per entry, '.' decimal,
/// shortest round-trip doubles). The leading timestamp comment is the only
/// run-dependent line.
std::string cmi_scan_csv(const std::vector<CmiScanRow>& rows, const std::string& timestamp);
std::string mpoee_bench_csv(const std::vector<MpoeeBenchRow>& rows, const std::string& timestamp);

}  // namespace rcsim

#endif
