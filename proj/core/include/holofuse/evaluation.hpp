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

#include "holofuse/fusion.hpp"
#include "holofuse/random.hpp"
#include "holofuse/sensing.hpp"
#include "holofuse/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace holofuse {

struct RocPoint {
  double gamma = 0.0;
  double pf0 = 0.0;
  double pd0 = 0.0;
};

// Empirical ROC. Points are sorted by increasing threshold, so pf0 and pd0
// are both nonincreasing along the vector. The first point has gamma = -inf
// and sits at (1, 1).
struct RocCurve {
  std::vector<RocPoint> points;
  std::size_t trials_h0 = 0;
  std::size_t trials_h1 = 0;
  std::uint64_t seed = 0;

  [[nodiscard]] double se_pf0(std::size_t i) const;
  [[nodiscard]] double se_pd0(std::size_t i) const;
};

// sqrt(p (1 - p) / n).
double binomial_standard_error(double p, std::size_t n);

// Exact empirical ROC: every distinct pooled statistic is a candidate
// threshold, and H1 is declared iff the statistic exceeds it.
RocCurve empirical_roc(std::vector<double> stats_h0, std::vector<double> stats_h1,
                       std::uint64_t seed = 0);

// Fixed effective channel plus sensing model.
struct DetectionSystem {
  CMatrix channel_eff;
  SensorStats stats;
  double noise_power = 0.0;
};

class FusionRule {
 public:
  enum class Kind { Llr, WidelyLinear };

  static FusionRule llr() { return FusionRule(Kind::Llr, {}); }
  static FusionRule widely_linear(FusionWeights weights) {
    return FusionRule(Kind::WidelyLinear, std::move(weights));
  }

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const FusionWeights& weights() const { return weights_; }

 private:
  FusionRule(Kind kind, FusionWeights weights) : kind_(kind), weights_(std::move(weights)) {}
  Kind kind_;
  FusionWeights weights_;
};

// Draws `trials` statistics under each hypothesis. Trial t under hypothesis h
// uses substream ("mc", h, t) of `rng`, so the result does not depend on
// `workers`. Throws std::runtime_error on a non-finite statistic, naming the
// trial and its seed.
RocCurve roc_monte_carlo(const DetectionSystem& system, const FusionRule& rule,
                         std::size_t trials_per_hypothesis, const RandomStream& rng,
                         std::size_t workers = 1);

// Linear interpolation in P_F0 over (pf, pd) pairs; repeated pf values keep
// the largest pd. Throws std::domain_error outside the covered pf range.
double interpolate_detection(std::vector<RocPoint> points, double target_pfa);

// P_D0 at a false-alarm target. Throws std::domain_error when the target lies
// below 1 / trials_h0 or above 1.
double detection_at_pfa(const RocCurve& curve, double target_pfa);
// Same for several targets, sorting the curve once.
std::vector<double> detection_at_pfa(const RocCurve& curve, const std::vector<double>& targets);

struct ObservationPoint {
  std::size_t nu = 0;
  double pf0 = 0.0;
  double pd0 = 0.0;
};

// Counting rule "at least nu of K sensors say H1" with ideal channels, for
// nu = 0..K (pf0 and pd0 nonincreasing in nu).
std::vector<ObservationPoint> observation_bound(std::size_t num_sensors, double pd, double pf);
// Upper tail sum_{i>=nu} C(K,i) p^i (1-p)^(K-i).
double binomial_upper_tail(std::size_t k, std::size_t nu, double p);
double observation_bound_at_pfa(std::size_t num_sensors, double pd, double pf, double target_pfa);

struct PowerModel {
  double eps_tx_sensor = 1.0;  // per-sensor transmit electronics
  double eps_rhs = 1.0;        // per RHS element
  double eps_rx_feed = 10.0;   // per receive chain (feed or digital antenna)
  double eps_static = 0.0;
  std::size_t num_sensors = 10;
  std::size_t num_rhs_elements = 144;
  std::size_t num_feeds = 1;
  std::size_t num_digital = 100;
  RVector alpha;  // empty means all ones

  void validate() const;
};

struct PowerComparison {
  double holographic = 0.0;
  double digital = 0.0;
  double receive_ratio = 0.0;  // digital receive power / holographic receive power
};

PowerComparison power_comparison(const PowerModel& model);

// Mean and standard error of per-realization detection probabilities.
struct AveragedDetection {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t realizations = 0;
};

AveragedDetection average_detection(const std::vector<double>& values);

}  // namespace holofuse
