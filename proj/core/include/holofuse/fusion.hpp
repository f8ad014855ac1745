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

#include "holofuse/sensing.hpp"
#include "holofuse/types.hpp"

#include <vector>

namespace holofuse {

// Unit-norm augmented weight vector defining the widely-linear statistic
// Lambda = a_aug^H [y; conj(y)].
class FusionWeights {
 public:
  FusionWeights() = default;
  // Normalizes `augmented`; throws std::invalid_argument for a zero or odd-length vector.
  explicit FusionWeights(CVector augmented);
  // Builds [a; conj(a)] / ||.||.
  static FusionWeights from_half(const CVector& a);

  [[nodiscard]] const CVector& augmented() const { return augmented_; }
  // Leading N-block `a` of the augmented vector.
  [[nodiscard]] CVector half() const { return augmented_.head(augmented_.size() / 2); }
  [[nodiscard]] Eigen::Index num_feeds() const { return augmented_.size() / 2; }

 private:
  CVector augmented_;
};

// Log-likelihood ratio of H1 vs H0 by exhaustive summation over the 2^K
// decision vectors. The noiseless constellation points are precomputed so
// repeated evaluation costs O(N 2^K). Exponents use ||y - s_x||^2 directly;
// when the two hypotheses are close the ratio is formed as log1p of a
// weighted pmf difference to avoid cancellation near LLR = 0.
class LlrEvaluator {
 public:
  LlrEvaluator(const CMatrix& channel_eff, const RVector& alpha, double noise_power,
               const DecisionPmf& pmf_h1, const DecisionPmf& pmf_h0);

  double operator()(const CVector& y) const;

 private:
  CMatrix points_;  // N x 2^K, column x = channel_eff D_alpha x
  std::vector<double> p1_;
  std::vector<double> p0_;
  std::vector<double> log_p1_;
  std::vector<double> log_p0_;
  double noise_power_;
  mutable RVector exponent_;
};

double llr(const CVector& y, const CMatrix& channel_eff, const SensorStats& stats,
           double noise_power);
double llr(const CVector& y, const CMatrix& channel_eff, const RVector& alpha, double noise_power,
           const DecisionPmf& pmf_h1, const DecisionPmf& pmf_h0);

// Real part of a_aug^H [y; conj(y)]. Throws std::logic_error if the imaginary
// part exceeds 1e-10 ||y|| ||a|| (weights without conjugate-pair structure).
double wl_statistic(const FusionWeights& weights, const CVector& y);

// Augmented mean-difference directions: [H^e D rho10] for FuC and
// [H^e D 1] for IS.
CVector fuc_target(const CMatrix& channel_eff, const SensorStats& stats);
CVector is_target(const CMatrix& channel_eff, const SensorStats& stats);

// FuC_i: 4 |a^H t|^2 / (a^H Cov(y_aug|H_i) a);  IS: (4/sigma^2) |a^H t1|^2 / a^H a.
double deflection(DesignKind kind, const CVector& augmented_weights, const CMatrix& channel_eff,
                  const SensorStats& stats, double noise_power);
double deflection(DesignKind kind, const FusionWeights& weights, const CMatrix& channel_eff,
                  const SensorStats& stats, double noise_power);

// Cauchy-Schwarz optimal weights: Cov(y_aug|H_i)^{-1} t normalized, through a
// Hermitian positive-definite solve.
FusionWeights optimal_weights_fuc(Hypothesis h, const CMatrix& channel_eff,
                                  const SensorStats& stats, double noise_power);
// t1 / ||t1||; no whitening needed.
FusionWeights optimal_weights_is(const CMatrix& channel_eff, const SensorStats& stats);

FusionWeights optimal_weights(DesignKind kind, const CMatrix& channel_eff,
                              const SensorStats& stats, double noise_power);

// Decides H1 iff statistic > threshold; ties go to H0.
constexpr Hypothesis threshold_test(double statistic, double threshold) {
  return statistic > threshold ? Hypothesis::H1 : Hypothesis::H0;
}

}  // namespace holofuse
