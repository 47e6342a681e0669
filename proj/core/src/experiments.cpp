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

#include "rcsim/experiments.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rcsim/dense.hpp"
#include "rcsim/distribution.hpp"
#include "rcsim/errors.hpp"
#include "rcsim/mpdo.hpp"
#include "rcsim/patching.hpp"
#include "rcsim/stats.hpp"
#include "rcsim/tableau.hpp"

namespace rcsim {

using nlohmann::json;

namespace {

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "cmi_scan") return ExperimentKind::CmiScan;
  if (name == "mpoee_bench") return ExperimentKind::MpoeeBench;
  if (name == "patch_sample") return ExperimentKind::PatchSample;
  if (name == "validate") return ExperimentKind::Validate;
  throw std::invalid_argument("unknown experiment: " + name);
}

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

CircuitDescriptor descriptor_with_gamma(CircuitDescriptor d, double gamma) {
  d.noise = NoiseSpec(d.noise.kind, gamma);
  return d;
}

std::string engine_for(const ExperimentConfig& config) {
  if (config.engine != "auto") return config.engine;
  if (config.descriptor.gate_family == GateFamily::Clifford2Q) return "stabilizer";
  if (config.descriptor.geometry.dimension() == 1) return "mpdo";
  return "dense";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  static const std::vector<std::string> known = {
      "experiment", "descriptor", "depths",  "gammas",  "ells",
      "chis",       "realizations", "mc_samples", "seed", "out",
      "threads",    "x_size",     "engine",  "smooth_depth_pairs",
      "d_star",     "samples",    "backend"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw std::invalid_argument("unknown field \"" + it.key() + "\" in experiment config");
    }
  }
  ExperimentConfig c;
  c.experiment = experiment_kind_from_string(j.at("experiment").get<std::string>());
  c.descriptor = CircuitDescriptor::from_json(j.at("descriptor").dump());
  if (j.contains("seed")) c.descriptor.seed = j.at("seed").get<uint64_t>();
  c.depths = j.contains("depths") ? j.at("depths").get<std::vector<int>>()
                                  : std::vector<int>{c.descriptor.depth};
  c.gammas = j.contains("gammas") ? j.at("gammas").get<std::vector<double>>()
                                  : std::vector<double>{c.descriptor.noise.gamma};
  if (j.contains("ells")) c.ells = j.at("ells").get<std::vector<int>>();
  if (j.contains("chis")) c.chis = j.at("chis").get<std::vector<int>>();
  if (j.contains("realizations")) c.realizations = j.at("realizations").get<int>();
  if (j.contains("mc_samples")) c.mc_samples = j.at("mc_samples").get<int>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  if (j.contains("x_size")) c.x_size = j.at("x_size").get<int>();
  if (j.contains("engine")) c.engine = j.at("engine").get<std::string>();
  if (j.contains("smooth_depth_pairs")) c.smooth_depth_pairs = j.at("smooth_depth_pairs").get<bool>();
  if (j.contains("d_star")) c.d_star = j.at("d_star").get<int>();
  if (j.contains("samples")) c.samples = j.at("samples").get<int>();
  if (j.contains("backend")) c.backend = j.at("backend").get<std::string>();
  if (c.depths.empty() || c.gammas.empty() || c.ells.empty() || c.chis.empty()) {
    throw std::invalid_argument("sweep axes must be nonempty");
  }
  if (c.realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (c.mc_samples < 1) throw std::invalid_argument("mc_samples must be >= 1");
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::vector<int> central_region(const GridGeometry& geometry, int x_size) {
  std::vector<int> out;
  if (geometry.dimension() == 1) {
    int start = (geometry.dims[0] - x_size) / 2;
    for (int i = 0; i < x_size; ++i) out.push_back(start + i);
  } else if (geometry.dimension() == 2) {
    int r0 = (geometry.dims[0] - x_size) / 2;
    int c0 = (geometry.dims[1] - x_size) / 2;
    for (int i = 0; i < x_size; ++i)
      for (int j = 0; j < x_size; ++j) out.push_back(geometry.qubit_at({r0 + i, c0 + j}));
  } else {
    throw std::invalid_argument("central_region supports 1D and 2D grids");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> far_region(const GridGeometry& geometry, const std::vector<int>& x, int ell) {
  std::vector<int> out;
  for (int q = 0; q < geometry.num_qubits(); ++q) {
    if (std::find(x.begin(), x.end(), q) != x.end()) continue;
    int dist = std::numeric_limits<int>::max();
    for (int xc : x) dist = std::min(dist, geometry.distance(q, xc));
    if (dist >= ell) out.push_back(q);
  }
  return out;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<CmiScanRow> run_cmi_scan(const ExperimentConfig& config) {
  const std::string engine = engine_for(config);
  const GridGeometry& geometry = config.descriptor.geometry;
  const int n = geometry.num_qubits();
  const std::vector<int> x = central_region(geometry, config.x_size);
  const int max_depth = *std::max_element(config.depths.begin(), config.depths.end());

  std::vector<std::vector<int>> z_regions, y_regions;
  for (int ell : config.ells) {
    std::vector<int> z = far_region(geometry, x, ell);
    std::vector<int> y;
    for (int q = 0; q < n; ++q) {
      bool in_x = std::find(x.begin(), x.end(), q) != x.end();
      bool in_z = std::find(z.begin(), z.end(), q) != z.end();
      if (!in_x && !in_z) y.push_back(q);
    }
    z_regions.push_back(std::move(z));
    y_regions.push_back(std::move(y));
  }

  std::vector<CmiScanRow> rows;
  const size_t cells = config.depths.size() * config.ells.size();
  for (double gamma : config.gammas) {
    CircuitDescriptor desc = descriptor_with_gamma(config.descriptor, gamma);
    desc.depth = max_depth;
    std::vector<double> values(static_cast<size_t>(config.realizations) * cells, 0.0);

    parallel_for(config.realizations, config.threads, [&](int r) {
      Circuit circuit(desc, static_cast<uint64_t>(r));
      std::vector<int> all(n);
      for (int q = 0; q < n; ++q) all[q] = q;
      auto record = [&](int depth_index, const std::function<double(int)>& cmi_of_ell) {
        for (size_t e = 0; e < config.ells.size(); ++e) {
          values[(static_cast<size_t>(r) * config.depths.size() + depth_index) *
                     config.ells.size() +
                 e] = cmi_of_ell(static_cast<int>(e));
        }
      };
      auto depth_index_of = [&](int t) {
        auto it = std::find(config.depths.begin(), config.depths.end(), t);
        return it == config.depths.end() ? -1 : static_cast<int>(it - config.depths.begin());
      };

      if (engine == "stabilizer") {
        PauliTableau tableau = PauliTableau::zero_state(n);
        int di = depth_index_of(0);
        auto measure = [&](int index) {
          PauliTableau diag = tableau.diagonal_subgroup();
          record(index, [&](int e) {
            return static_cast<double>(diag.cmi(x, y_regions[e], z_regions[e]));
          });
        };
        if (di >= 0) measure(di);
        for (int t = 1; t <= max_depth; ++t) {
          apply_stabilizer_layer(tableau, circuit, circuit.layers()[t - 1], all);
          di = depth_index_of(t);
          if (di >= 0) measure(di);
        }
      } else if (engine == "dense") {
        DenseState state(n);
        auto measure = [&](int index) {
          DistributionTable table = state.distribution();
          record(index, [&](int e) { return exact_cmi(table, x, y_regions[e], z_regions[e]); });
        };
        int di = depth_index_of(0);
        if (di >= 0) measure(di);
        for (int t = 1; t <= max_depth; ++t) {
          apply_dense_layer(state, circuit, circuit.layers()[t - 1], all,
                            HeraldMode::Trajectory);
          di = depth_index_of(t);
          if (di >= 0) measure(di);
        }
      } else if (engine == "mpdo") {
        if (geometry.dimension() != 1) {
          throw std::invalid_argument("mpdo engine needs a 1D geometry");
        }
        MpdoState state(n, config.chis.front());
        auto measure = [&](int index, int t) {
          record(index, [&](int e) {
            StreamKey key{desc.seed, static_cast<uint64_t>(r), static_cast<uint64_t>(t),
                          static_cast<uint64_t>(e), StreamPurpose::McSample};
            CounterRng rng(key);
            return state.mc_cmi(x, y_regions[e], z_regions[e], config.mc_samples, rng).mean;
          });
        };
        int di = depth_index_of(0);
        if (di >= 0) measure(di, 0);
        for (int t = 1; t <= max_depth; ++t) {
          apply_mpdo_layer(state, circuit, circuit.layers()[t - 1]);
          di = depth_index_of(t);
          if (di >= 0) measure(di, t);
        }
      } else {
        throw std::invalid_argument("unknown engine: " + engine);
      }
    });

    for (size_t d = 0; d < config.depths.size(); ++d) {
      for (size_t e = 0; e < config.ells.size(); ++e) {
        std::vector<double> per_r(config.realizations);
        for (int r = 0; r < config.realizations; ++r) {
          per_r[r] = values[(static_cast<size_t>(r) * config.depths.size() + d) *
                                config.ells.size() +
                            e];
        }
        MeanStderr ms = mean_stderr(per_r);
        rows.push_back({engine, n, config.depths[d], gamma, config.ells[e], ms.mean, ms.stderr_,
                        config.realizations});
      }
    }
  }

  if (config.smooth_depth_pairs) {
    // Average rows over consecutive depth pairs (matching gamma and ell).
    std::vector<CmiScanRow> smoothed;
    for (size_t i = 0; i < rows.size(); ++i) {
      size_t depth_pos = (i / config.ells.size()) % config.depths.size();
      if (depth_pos % 2 == 1) continue;
      if (depth_pos + 1 < config.depths.size()) {
        CmiScanRow a = rows[i];
        const CmiScanRow& b = rows[i + config.ells.size()];
        a.mean_cmi = 0.5 * (a.mean_cmi + b.mean_cmi);
        a.stderr_ = 0.5 * std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
        smoothed.push_back(a);
      } else {
        smoothed.push_back(rows[i]);
      }
    }
    rows = std::move(smoothed);
  }
  return rows;
}

std::vector<MpoeeBenchRow> run_mpoee_bench(const ExperimentConfig& config) {
  const GridGeometry& geometry = config.descriptor.geometry;
  if (geometry.dimension() != 1) throw std::invalid_argument("mpoee bench needs a 1D geometry");
  const int n = geometry.num_qubits();
  const int cut = n / 2 - 1;  // bond between the two central qubits
  const int max_depth = *std::max_element(config.depths.begin(), config.depths.end());

  std::vector<MpoeeBenchRow> rows;
  for (double gamma : config.gammas) {
    CircuitDescriptor desc = descriptor_with_gamma(config.descriptor, gamma);
    desc.depth = max_depth;
    for (int chi : config.chis) {
      std::vector<double> values(static_cast<size_t>(config.realizations) * config.depths.size(),
                                 0.0);
      parallel_for(config.realizations, config.threads, [&](int r) {
        Circuit circuit(desc, static_cast<uint64_t>(r));
        MpdoState state(n, chi);
        auto depth_index_of = [&](int t) {
          auto it = std::find(config.depths.begin(), config.depths.end(), t);
          return it == config.depths.end() ? -1 : static_cast<int>(it - config.depths.begin());
        };
        int di = depth_index_of(0);
        if (di >= 0) values[static_cast<size_t>(r) * config.depths.size() + di] = state.mpoee(cut);
        for (int t = 1; t <= max_depth; ++t) {
          apply_mpdo_layer(state, circuit, circuit.layers()[t - 1]);
          di = depth_index_of(t);
          if (di >= 0) {
            values[static_cast<size_t>(r) * config.depths.size() + di] = state.mpoee(cut);
          }
        }
      });
      for (size_t d = 0; d < config.depths.size(); ++d) {
        std::vector<double> per_r(config.realizations);
        for (int r = 0; r < config.realizations; ++r) {
          per_r[r] = values[static_cast<size_t>(r) * config.depths.size() + d];
        }
        rows.push_back({n, config.depths[d], gamma, chi, cut, mean_stderr(per_r).mean});
      }
    }
  }
  return rows;
}

PatchSampleResult run_patch_sample(const ExperimentConfig& config) {
  const CircuitDescriptor& desc = config.descriptor;
  const int d_star = config.d_star < 0 ? desc.depth : config.d_star;
  if (d_star > desc.depth) throw std::invalid_argument("d_star exceeds circuit depth");
  SamplerBackend backend = sampler_backend_from_string(config.backend);
  const int ell = config.ells.front();

  PatchSampleResult result;
  result.bitstrings.assign(config.samples, "");
  int threads = config.threads <= 0 ? static_cast<int>(std::thread::hardware_concurrency())
                                    : config.threads;
  threads = std::max(1, std::min(threads, config.samples));
  // Each worker owns a sampler (the conditional cache is not shared); sample
  // i draws from its own stream, so the output is thread-count independent.
  std::atomic<int> next_block{0};
  const int block = (config.samples + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        Circuit truncated = truncate_circuit(desc, d_star, 0);
        PatchingSampler sampler(truncated, coarse_grain(desc.geometry, ell), backend);
        for (;;) {
          int b = next_block.fetch_add(1);
          int lo = b * block, hi = std::min((b + 1) * block, config.samples);
          if (lo >= hi) return;
          for (int i = lo; i < hi; ++i) {
            StreamKey key{desc.seed, 0, 0, static_cast<uint64_t>(i), StreamPurpose::PatchSample};
            CounterRng rng(key);
            std::vector<int> bits = sampler.sample(rng);
            std::string line(bits.size(), '0');
            for (size_t q = 0; q < bits.size(); ++q) line[q] = static_cast<char>('0' + bits[q]);
            result.bitstrings[i] = std::move(line);
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  json sidecar;
  sidecar["descriptor"] = json::parse(desc.to_json());
  sidecar["ell"] = ell;
  sidecar["d_star"] = d_star;
  sidecar["backend"] = config.backend;
  sidecar["seed"] = desc.seed;
  sidecar["samples"] = config.samples;
  result.sidecar_json = sidecar.dump();
  return result;
}

std::string ValidationReport::to_json() const {
  json j;
  j["all_pass"] = all_pass;
  json suites_json = json::array();
  for (const auto& suite : suites) {
    json s;
    s["name"] = suite.name;
    s["pass"] = suite.pass;
    s["cases"] = json::parse(suite.diagnostics.empty() ? "[]" : suite.diagnostics);
    suites_json.push_back(std::move(s));
  }
  j["suites"] = std::move(suites_json);
  return j.dump(2);
}

namespace {

CircuitDescriptor small_descriptor(GateFamily family, NoiseKind kind, double gamma, int n,
                                   int depth, uint64_t seed) {
  CircuitDescriptor d;
  d.geometry = GridGeometry({n});
  d.depth = depth;
  d.gate_family = family;
  d.noise = NoiseSpec(kind, gamma);
  d.seed = seed;
  return d;
}

std::vector<std::vector<int>> random_tripartition(int n, CounterRng& rng) {
  // Each qubit joins X, Y or Z; retried until X and Z are nonempty.
  for (;;) {
    std::vector<std::vector<int>> parts(3);
    for (int q = 0; q < n; ++q) parts[rng.uniform_below(3)].push_back(q);
    if (!parts[0].empty() && !parts[2].empty()) return parts;
  }
}

}  // namespace

ValidationReport run_validate(const ExperimentConfig& config) {
  ValidationReport report;
  const uint64_t seed = config.descriptor.seed;

  {  // Stabilizer and tensor-train tracks against the dense oracle.
    SuiteResult suite;
    suite.name = "oracle_equivalence";
    suite.pass = true;
    json cases = json::array();
    for (int i = 0; i < 5; ++i) {
      CircuitDescriptor d = small_descriptor(GateFamily::Clifford2Q, NoiseKind::HeraldedReset,
                                             0.2, 6, 4, seed + 11 * i);
      Circuit circuit(d, 0);
      std::vector<int> all{0, 1, 2, 3, 4, 5};
      DistributionTable stab = run_stabilizer_circuit(circuit).marginal_distribution(all);
      DistributionTable oracle = evolve(circuit).distribution();
      double dev = l1_distance(stab, oracle);
      bool ok = dev <= 1e-9;
      suite.pass = suite.pass && ok;
      cases.push_back({{"kind", "clifford"}, {"seed", d.seed}, {"l1", dev}, {"pass", ok}});
    }
    for (int i = 0; i < 3; ++i) {
      CircuitDescriptor d = small_descriptor(GateFamily::Haar2Q, NoiseKind::AmplitudeDamping, 0.1,
                                             5, 4, seed + 7 * i + 1);
      Circuit circuit(d, 0);
      MpdoState state = run_mpdo_circuit(circuit, 256);
      DistributionTable oracle = evolve(circuit).distribution();
      double max_dev = 0.0;
      for (uint32_t b = 0; b < 32; ++b) {
        std::vector<int> bits(5);
        for (int q = 0; q < 5; ++q) bits[q] = (b >> (4 - q)) & 1;
        max_dev = std::max(max_dev, std::abs(state.diagonal_prob(bits) - oracle.probs(b)));
      }
      bool ok = max_dev <= 1e-8;
      suite.pass = suite.pass && ok;
      cases.push_back({{"kind", "haar_mpdo"}, {"seed", d.seed}, {"max_dev", max_dev}, {"pass", ok}});
    }
    suite.diagnostics = cases.dump();
    report.suites.push_back(std::move(suite));
  }

  {  // Pinsker inequality on exact tables.
    SuiteResult suite;
    suite.name = "pinsker";
    suite.pass = true;
    json cases = json::array();
    for (int i = 0; i < 10; ++i) {
      CircuitDescriptor d =
          (i % 2 == 0)
              ? small_descriptor(GateFamily::Haar2Q, NoiseKind::AmplitudeDamping, 0.15, 6, 4,
                                 seed + 13 * i)
              : small_descriptor(GateFamily::Clifford2Q, NoiseKind::HeraldedReset, 0.2, 6, 4,
                                 seed + 13 * i);
      DistributionTable table = evolve(Circuit(d, 0)).distribution();
      CounterRng rng(StreamKey{seed, static_cast<uint64_t>(i), 0, 0, StreamPurpose::Scratch});
      for (int c = 0; c < 4; ++c) {
        auto parts = random_tripartition(6, rng);
        double info = exact_cmi(table, parts[0], parts[1], parts[2]);
        double residual = markov_residual(table, parts[0], parts[1], parts[2]);
        double bound = residual * residual / (2.0 * std::log(2.0));
        bool ok = info + 1e-12 >= bound;
        suite.pass = suite.pass && ok;
        cases.push_back({{"seed", d.seed}, {"cmi", info}, {"bound", bound}, {"pass", ok}});
      }
    }
    suite.diagnostics = cases.dump();
    report.suites.push_back(std::move(suite));
  }

  {  // Patch-factorization bound.
    SuiteResult suite;
    suite.name = "prop1";
    suite.pass = true;
    json cases = json::array();
    for (int i = 0; i < 5; ++i) {
      CircuitDescriptor d = small_descriptor(GateFamily::Haar2Q, NoiseKind::AmplitudeDamping, 0.2,
                                             8, 4, seed + 3 * i);
      Prop1Report r = verify_patch_factorization(Circuit(d, 0), 2);
      suite.pass = suite.pass && r.holds;
      cases.push_back({{"seed", d.seed},
                       {"lhs", r.lhs},
                       {"eta", r.eta_measured},
                       {"bound", r.bound},
                       {"pass", r.holds}});
    }
    suite.diagnostics = cases.dump();
    report.suites.push_back(std::move(suite));
  }

  {  // Marginal convergence between different input states.
    SuiteResult suite;
    suite.name = "lemma6_decay";
    json cases = json::array();
    CircuitDescriptor base =
        small_descriptor(GateFamily::Haar2Q, NoiseKind::AmplitudeDamping, 0.1, 6, 8, seed);
    std::vector<int> x = central_region(base.geometry, 2);
    const int reals = 12;
    std::vector<double> depths_axis, log_means;
    for (int depth = 2; depth <= 8; ++depth) {
      std::vector<double> dists(reals);
      parallel_for(reals, config.threads, [&](int r) {
        CircuitDescriptor d = base;
        d.depth = depth;
        Circuit circuit(d, static_cast<uint64_t>(r));
        DistributionTable p = marginal(evolve(circuit, InputState::ZeroState).distribution(), x);
        DistributionTable q =
            marginal(evolve(circuit, InputState::MaximallyMixed).distribution(), x);
        dists[r] = l1_distance(p, q);
      });
      double mean = mean_stderr(dists).mean;
      if (mean > 0.0) {
        depths_axis.push_back(depth);
        log_means.push_back(std::log(mean));
      }
    }
    bool ok = depths_axis.size() >= 3;
    double slope = 0.0;
    if (ok) {
      slope = linear_fit(depths_axis, log_means).slope;
      ok = slope < 0.0;
    }
    suite.pass = ok;
    cases.push_back({{"slope", slope}, {"points", depths_axis.size()}, {"pass", ok}});
    suite.diagnostics = cases.dump();
    report.suites.push_back(std::move(suite));
  }

  {  // Stabilizer CMI: nonnegative integers, equal to the oracle's value.
    SuiteResult suite;
    suite.name = "cmi_nonneg_stab";
    suite.pass = true;
    json cases = json::array();
    for (int i = 0; i < 10; ++i) {
      NoiseKind kind = (i % 2 == 0) ? NoiseKind::HeraldedReset : NoiseKind::HeraldedDepolarizing;
      CircuitDescriptor d =
          small_descriptor(GateFamily::Clifford2Q, kind, 0.15, 8, 6, seed + 17 * i);
      Circuit circuit(d, 0);
      PauliTableau tableau = run_stabilizer_circuit(circuit);
      CounterRng rng(StreamKey{seed, static_cast<uint64_t>(i), 1, 0, StreamPurpose::Scratch});
      auto parts = random_tripartition(8, rng);
      int value = tableau.cmi(parts[0], parts[1], parts[2]);
      DistributionTable oracle = evolve(circuit).distribution();
      double exact = exact_cmi(oracle, parts[0], parts[1], parts[2]);
      bool ok = value >= 0 && std::abs(exact - value) <= 1e-10;
      suite.pass = suite.pass && ok;
      cases.push_back(
          {{"seed", d.seed}, {"stabilizer_cmi", value}, {"oracle_cmi", exact}, {"pass", ok}});
    }
    // Negative control: a corrupted tableau must be flagged.
    bool control = false;
    try {
      PauliTableau bad = PauliTableau::from_strings(2, {"+ZI", "+ZI"});
      bad.region_entropy({0, 1});
    } catch (const integrity_error&) {
      control = true;
    }
    suite.pass = suite.pass && control;
    cases.push_back({{"kind", "corruption_control"}, {"pass", control}});
    suite.diagnostics = cases.dump();
    report.suites.push_back(std::move(suite));
  }

  report.all_pass = true;
  for (const auto& suite : report.suites) report.all_pass = report.all_pass && suite.pass;
  return report;
}

std::string cmi_scan_csv(const std::vector<CmiScanRow>& rows, const std::string& timestamp) {
  std::string out = "# generated " + timestamp + "\n";
  out += "model,n,d,gamma,ell,mean_cmi,stderr,realizations\n";
  for (const auto& r : rows) {
    out += r.model + "," + std::to_string(r.n) + "," + std::to_string(r.depth) + "," +
           fmt_double(r.gamma) + "," + std::to_string(r.ell) + "," + fmt_double(r.mean_cmi) +
           "," + fmt_double(r.stderr_) + "," + std::to_string(r.realizations) + "\n";
  }
  return out;
}

std::string mpoee_bench_csv(const std::vector<MpoeeBenchRow>& rows, const std::string& timestamp) {
  std::string out = "# generated " + timestamp + "\n";
  out += "n,d,gamma,chi,cut,mpoee\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.depth) + "," + fmt_double(r.gamma) + "," +
           std::to_string(r.chi) + "," + std::to_string(r.cut) + "," + fmt_double(r.mpoee) + "\n";
  }
  return out;
}

}  // namespace rcsim
