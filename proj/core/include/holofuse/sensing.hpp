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

#include "holofuse/random.hpp"
#include "holofuse/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace holofuse {

// Joint pmf over decision vectors x in {-1,+1}^K stored as an explicit 2^K
// table. Bit k of the table index is set iff x_k = +1. K is capped at 20.
class DecisionPmf {
 public:
  static constexpr std::size_t kMaxSensors = 20;

  // Throws if the table is not 2^K long, has negative entries, or its sum
  // deviates from 1 by more than 1e-9.
  DecisionPmf(std::size_t num_sensors, std::vector<double> table);

  // Product pmf with Pr(x_k = +1) = p_plus[k].
  static DecisionPmf independent(const RVector& p_plus);

  [[nodiscard]] std::size_t num_sensors() const { return num_sensors_; }
  [[nodiscard]] const std::vector<double>& table() const { return table_; }
  [[nodiscard]] double probability(std::uint32_t index) const { return table_[index]; }

  [[nodiscard]] RVector mean() const;        // E[x]
  [[nodiscard]] RVector prob_plus() const;   // Pr(x_k = +1)
  [[nodiscard]] RMatrix covariance() const;  // Cov(x)

  [[nodiscard]] std::uint32_t sample_index(RandomStream& rng) const;

 private:
  std::size_t num_sensors_;
  std::vector<double> table_;
  std::vector<double> cdf_;
};

// +-1 decision vector encoded by a pmf table index.
RVector decision_vector(std::uint32_t index, std::size_t num_sensors);

// Per-sensor operating points plus the conditional second-order description
// of x that the FuC designs consume.
struct SensorStats {
  RVector rho1;  // P_{D,k}
  RVector rho0;  // P_{F,k}
  RMatrix cov_h1;
  RMatrix cov_h0;
  RVector alpha;  // transmit amplitudes, diagonal of D_alpha
  bool iid = false;
  // Explicit joint tables; present for non-independent sensors, required for
  // sampling and for the LLR in that case.
  std::optional<DecisionPmf> joint_h1;
  std::optional<DecisionPmf> joint_h0;

  // Conditionally i.i.d. sensors: rho_i = P_i 1, Cov(x|H_i) = 4 P_i (1 - P_i) I.
  static SensorStats identical(std::size_t num_sensors, double pd, double pf, double alpha = 1.0);
  // Conditionally independent sensors with per-sensor operating points.
  static SensorStats independent(const RVector& pd, const RVector& pf, const RVector& alpha);
  // Arbitrary dependence through explicit joint pmfs.
  static SensorStats from_joint(DecisionPmf h1, DecisionPmf h0, const RVector& alpha);
  // Perfect sensing (P_D = 1, P_F = 0): the design-time model of the IS rule.
  static SensorStats ideal(const RVector& alpha);

  [[nodiscard]] std::size_t num_sensors() const { return static_cast<std::size_t>(alpha.size()); }
  [[nodiscard]] const RVector& rho(Hypothesis h) const { return h == Hypothesis::H1 ? rho1 : rho0; }
  [[nodiscard]] const RMatrix& cov(Hypothesis h) const { return h == Hypothesis::H1 ? cov_h1 : cov_h0; }
  [[nodiscard]] RVector rho10() const { return rho1 - rho0; }

  // Joint pmf for hypothesis h, building the product table when independent.
  [[nodiscard]] DecisionPmf pmf(Hypothesis h) const;

  // Throws std::invalid_argument when probabilities leave [0,1], P_F > P_D,
  // alpha is non-positive, or dimensions disagree.
  void validate() const;
};

// One draw of the decision vector under hypothesis h.
RVector sample_decisions(const SensorStats& stats, Hypothesis h, RandomStream& rng);

// y = channel_eff D_alpha x + w with w ~ CN(0, noise_power I).
CVector received_signal(const CMatrix& channel_eff, const SensorStats& stats, const RVector& x,
                        double noise_power, RandomStream& rng);

struct ConditionalMoments {
  CVector mean;
  CMatrix cov;
  CMatrix pcov;
  CMatrix aug_cov;  // [[cov, pcov], [pcov*, cov*]]
};

ConditionalMoments conditional_moments(const CMatrix& channel_eff, const SensorStats& stats,
                                       double noise_power, Hypothesis h);

// [v; conj(v)].
CVector augment(const CVector& v);
// [A; conj(A)] (2n x cols).
CMatrix augment_matrix(const CMatrix& a);

}  // namespace holofuse
