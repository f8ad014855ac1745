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

#pragma once

#include "holofuse/evaluation.hpp"
#include "holofuse/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace holofuse {

// Declarative experiment description. Defaults reproduce the reference
// simulation setup, so a bare scenario id runs it unchanged.
struct ExperimentConfig {
  std::string scenario = "roc_design";  // roc_design | pd_vs_M | pd_vs_K | quantization | power_table

  // scene
  std::size_t num_sensors = 10;
  std::size_t num_digital = 100;
  double rhs_spacing = 1.0 / 3.0;
  double feed_spacing = 0.5;
  double digital_spacing = 0.5;
  double directivity_exponent = 1.5;
  Box sensor_box{};
  Point3 rhs_center{70.0, 20.0, 10.0};
  Point3 feed_center{68.0, 18.0, 10.0};

  // fading
  double path_loss_db = -30.0;
  double reference_distance = 1.0;
  double path_loss_exponent = 2.0;
  double rician_db_lo = 3.0;
  double rician_db_hi = 5.0;
  double efficiency = 1.0;

  // sensing and noise
  double pd = 0.5;
  double pf = 0.05;
  double alpha = 1.0;
  double noise_dbm = -50.0;
  std::optional<double> noise_watts;  // overrides noise_dbm when set

  [[nodiscard]] double noise_power() const;

  // scenario grids
  std::size_t roc_num_rhs = 64;
  std::size_t roc_num_feeds = 1;
  std::vector<std::size_t> m_list{25, 49, 64, 100, 144};
  std::vector<std::size_t> n_list{1, 2};
  std::vector<std::size_t> k_list{5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  std::size_t sweep_num_rhs = 100;  // pd_vs_K and quantization
  std::size_t sweep_num_feeds = 1;
  std::vector<unsigned> bits_list{1, 2, 3};

  // optimizer
  std::size_t ao_max_iterations = 200;
  double ao_tolerance = 1e-6;
  std::size_t ao_mm_steps = 1;

  // Monte Carlo
  std::size_t trials = 100000;  // per hypothesis, per channel realization
  std::size_t realizations = 20;
  std::uint64_t seed = 20240601;
  double target_pfa = 0.01;
  std::size_t roc_grid_points = 61;

  // power model
  double eps_tx_sensor = 1.0;
  double eps_rhs = 1.0;
  double eps_rx_feed = 10.0;
  double eps_static = 0.0;
  std::size_t power_num_rhs = 144;
  std::size_t power_num_feeds = 1;

  // execution; never part of the artifacts
  std::size_t threads = 1;
  std::string output_dir = "out";

  // One message per violated constraint, naming the field. Empty iff runnable.
  [[nodiscard]] std::vector<std::string> validate() const;

  // JSON text with every field except `threads` and `output_dir`.
  [[nodiscard]] std::string to_json() const;
  // Fields missing from `text` keep their defaults; unknown keys are an error.
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  [[nodiscard]] std::uint64_t hash() const;
};

inline constexpr const char* kScenarioIds[] = {"roc_design", "pd_vs_M", "pd_vs_K", "quantization",
                                               "power_table"};

// P_D0 at the target false-alarm rate for one rule, averaged over channel
// realizations. Fields that do not apply to a row are 0 (`bits` = 0 means
// full-precision phases, `num_rhs` = 0 marks the fully-digital baseline).
// The counting-rule bound appears as rule "observation_bound", rhs "ideal".
struct DetectionRow {
  std::string rule;  // FuC-0, FuC-1, IS, LLR
  std::string rhs;   // designed, random, designed_FuC-0, ..., digital, quantized
  std::size_t num_sensors = 0;
  std::size_t num_rhs = 0;
  std::size_t num_feeds = 0;
  unsigned bits = 0;
  double pd0 = 0.0;
  double se_pd0 = 0.0;
  std::size_t realizations = 0;
  double ao_iterations = 0.0;  // mean outer iterations; 0 when no AO ran
  double ao_converged = 0.0;   // fraction of AO runs that met the tolerance
};

// Vertically averaged ROC on a fixed P_F0 grid.
struct AveragedCurve {
  std::string rule;
  std::string rhs;
  std::vector<double> pf0;
  std::vector<double> pd0;
  std::vector<double> se_pd0;
};

struct PowerRow {
  std::size_t num_rhs = 0;
  std::size_t num_feeds = 0;
  PowerComparison result;
};

struct Artifact {
  std::string name;
  std::string content;
};

struct ExperimentResult {
  std::vector<DetectionRow> rows;
  std::vector<AveragedCurve> curves;
  std::vector<PowerRow> power;
  std::vector<Artifact> artifacts;  // file name -> exact bytes

  // Row lookup; throws std::out_of_range when absent.
  [[nodiscard]] const DetectionRow& find(const std::string& rule, const std::string& rhs,
                                         std::size_t num_rhs, std::size_t num_feeds,
                                         unsigned bits = 0, std::size_t num_sensors = 0) const;
};

// Validates, then runs the configured scenario. Results depend only on the
// config (not on `threads`). Compute errors are rethrown with the scenario id.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes each artifact under `dir`, creating it if needed.
void write_artifacts(const ExperimentResult& result, const std::string& dir);

}  // namespace holofuse
