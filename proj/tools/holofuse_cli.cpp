// SPDX-License-Identifier: Apache-2.0
//
// holofuse: channel-aware holographic decision fusion toolkit
// Copyright (C) 2026 The holofuse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// holofuse command-line runner.
//
//   holofuse run --scenario roc_design [--config cfg.json] [--out dir]
//                [--seed N] [--trials N] [--threads N]
//   holofuse validate --config cfg.json
//   holofuse defaults [--scenario id]
//
// Errors go to stderr as one JSON object; the exit code is nonzero.

#include "holofuse/experiment.hpp"
#include "holofuse/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

namespace {

using nlohmann::json;

enum ExitCode { kOk = 0, kRuntimeError = 1, kUsageError = 2, kInvalidConfig = 3 };

int report_error(const std::string& kind, const std::string& message, int code,
                 const json& details = nullptr) {
  json err = {{"status", "error"}, {"kind", kind}, {"message", message}};
  if (!details.is_null()) err["details"] = details;
  std::cerr << err.dump() << '\n';
  return code;
}

struct Overrides {
  std::string config_path;
  std::string scenario;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> threads;
};

holofuse::ExperimentConfig resolve(const Overrides& o) {
  holofuse::ExperimentConfig cfg =
      o.config_path.empty() ? holofuse::ExperimentConfig{} : holofuse::ExperimentConfig::load(o.config_path);
  if (!o.scenario.empty()) cfg.scenario = o.scenario;
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (o.threads) cfg.threads = *o.threads;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holofuse: channel-aware holographic decision fusion experiments"};
  app.set_version_flag("--version", std::string(holofuse::kVersion));
  app.require_subcommand(1);

  Overrides o;
  auto* run = app.add_subcommand("run", "Run a scenario and write CSV/JSON artifacts");
  run->add_option("--scenario,-s", o.scenario,
                  "roc_design | pd_vs_M | pd_vs_K | quantization | power_table");
  run->add_option("--config,-c", o.config_path, "JSON config file; missing fields take defaults");
  run->add_option("--out,-o", o.out_dir, "Output directory (default: out)");
  run->add_option("--seed", o.seed, "Master seed override");
  run->add_option("--trials", o.trials, "Trials per hypothesis per channel realization");
  run->add_option("--threads,-j", o.threads, "Worker threads (results do not depend on it)");

  auto* validate = app.add_subcommand("validate", "Check a config and list violations");
  validate->add_option("--config,-c", o.config_path, "JSON config file")->required();
  validate->add_option("--scenario,-s", o.scenario, "Scenario override");

  auto* defaults = app.add_subcommand("defaults", "Print the default config as JSON");
  defaults->add_option("--scenario,-s", o.scenario, "Scenario id to put in the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kUsageError);
  }

  holofuse::ExperimentConfig cfg;
  try {
    cfg = resolve(o);
  } catch (const std::exception& e) {
    return report_error("config", e.what(), kInvalidConfig);
  }

  if (*defaults) {
    std::cout << cfg.to_json() << '\n';
    return kOk;
  }

  const auto violations = cfg.validate();
  if (*validate) {
    std::cout << json{{"status", violations.empty() ? "ok" : "invalid"}, {"violations", violations}}.dump(2)
              << '\n';
    return violations.empty() ? kOk : kInvalidConfig;
  }
  if (!violations.empty()) return report_error("config", "invalid config", kInvalidConfig, violations);

  try {
    const auto result = holofuse::run_experiment(cfg);
    holofuse::write_artifacts(result, cfg.output_dir);
    json files = json::array();
    for (const auto& a : result.artifacts) {
      files.push_back((std::filesystem::path(cfg.output_dir) / a.name).string());
    }
    std::cout << json{{"status", "ok"}, {"scenario", cfg.scenario}, {"artifacts", files}}.dump(2) << '\n';
  } catch (const std::exception& e) {
    return report_error("runtime", e.what(), kRuntimeError);
  }
  return kOk;
}
