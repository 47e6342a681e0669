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

#include "rcsim/cli.hpp"

#include <CLI11.hpp>

#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>

#include "rcsim/errors.hpp"
#include "rcsim/experiments.hpp"

namespace rcsim {

namespace {

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

struct CommonOptions {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> realizations;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON experiment config")->required();
  cmd->add_option("--seed", opts.seed, "Override the config seed");
  cmd->add_option("--out", opts.out, "Override the output path");
  cmd->add_option("--realizations", opts.realizations, "Override the realization count");
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware)");
}

ExperimentConfig load_config(const CommonOptions& opts, ExperimentKind expected) {
  ExperimentConfig config = ExperimentConfig::from_json_file(opts.config_path);
  if (config.experiment != expected) {
    throw std::invalid_argument("config experiment does not match the subcommand");
  }
  if (opts.seed) config.descriptor.seed = *opts.seed;
  if (opts.out) config.out = *opts.out;
  if (opts.realizations) config.realizations = *opts.realizations;
  if (opts.threads) config.threads = *opts.threads;
  return config;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output: " + path);
  out << text;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Noisy random circuit simulation and patching-sampler toolkit"};
  app.require_subcommand(1);

  CommonOptions cmi_opts, mpoee_opts, patch_opts, validate_opts;
  CLI::App* cmi = app.add_subcommand("cmi-scan", "CMI decay scans over depth/gamma/ell");
  add_common(cmi, cmi_opts);
  CLI::App* mpoee = app.add_subcommand("mpoee-bench", "Bond-dimension convergence benchmark");
  add_common(mpoee, mpoee_opts);
  CLI::App* patch = app.add_subcommand("patch-sample", "Draw samples with the patching sampler");
  add_common(patch, patch_opts);
  CLI::App* validate = app.add_subcommand("validate", "Cross-track validation suites");
  add_common(validate, validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (cmi->parsed()) {
      ExperimentConfig config = load_config(cmi_opts, ExperimentKind::CmiScan);
      write_text(config.out, cmi_scan_csv(run_cmi_scan(config), utc_timestamp()));
    } else if (mpoee->parsed()) {
      ExperimentConfig config = load_config(mpoee_opts, ExperimentKind::MpoeeBench);
      write_text(config.out, mpoee_bench_csv(run_mpoee_bench(config), utc_timestamp()));
    } else if (patch->parsed()) {
      ExperimentConfig config = load_config(patch_opts, ExperimentKind::PatchSample);
      PatchSampleResult result = run_patch_sample(config);
      std::string body;
      for (const auto& line : result.bitstrings) {
        body += line;
        body += '\n';
      }
      write_text(config.out, body);
      if (!config.out.empty()) {
        write_text(config.out + ".json", result.sidecar_json + "\n");
      }
    } else if (validate->parsed()) {
      ExperimentConfig config = load_config(validate_opts, ExperimentKind::Validate);
      ValidationReport report = run_validate(config);
      write_text(config.out, report.to_json() + "\n");
      if (!report.all_pass) {
        std::cerr << "validation failed\n";
        return 2;
      }
    }
  } catch (const capacity_error& e) {
    std::cerr << "sizing error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rcsim
