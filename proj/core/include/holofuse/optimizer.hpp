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

#include "holofuse/channel.hpp"
#include "holofuse/fusion.hpp"
#include "holofuse/random.hpp"
#include "holofuse/sensing.hpp"
#include "holofuse/types.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace holofuse {

// Wraps an angle into [0, 2pi).
double canonical_phase(double phi);

// RHS configuration: M phases in [0, 2pi) and the unit-modulus coefficients
// they define.
class PhaseConfig {
 public:
  PhaseConfig() = default;
  explicit PhaseConfig(RVector phases);

  static PhaseConfig zeros(std::size_t num_elements);
  static PhaseConfig uniform_random(std::size_t num_elements, RandomStream& rng);
  // Angles of `v`; entries with |v_m| == 0 keep the phase from `fallback`.
  static PhaseConfig from_angles(const CVector& v, const PhaseConfig& fallback);

  [[nodiscard]] const RVector& phases() const { return phases_; }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(phases_.size()); }
  [[nodiscard]] CVector theta() const;
  [[nodiscard]] CVector theta_aug() const;  // [theta; conj(theta)]

 private:
  RVector phases_;
};

// N_r = G diag(H D_alpha target) (N x M).
CMatrix build_signature_matrix(const ChannelSet& channels, const RVector& alpha,
                               const RVector& target);
// Block-diagonal [[N_r, 0], [0, conj(N_r)]] (2N x 2M).
CMatrix augment_block(const CMatrix& signature);

// Xi = (Nb^H a)(Nb^H a)^H for the augmented weights `a` (may be zero).
CMatrix build_xi(const CVector& augmented_weights, const CMatrix& signature_block);

// Psi = Delta0^H D_a Cov(x|H_i) D_a Delta0 + sigma^2/(2M) ||a_aug||^2 I, with
// Delta0 = [conj(D_r), D_r] and D_r = H^H diag(G^H a), a being the leading
// N-block of the augmented weights.
CMatrix build_psi(const CVector& augmented_weights, const ChannelSet& channels,
                  const SensorStats& stats, double noise_power, Hypothesis h);

// Largest eigenvalue of a Hermitian PSD matrix. Power iteration from a fixed
// start vector, falling back to a full Hermitian eigendecomposition when the
// iteration stalls. Throws std::invalid_argument when the Hermitian residual
// ||A - A^H||_F exceeds 1e-8 ||A||_F.
double lambda_max(const CMatrix& psi);

// One MM step for the FuC ratio theta^H Xi theta / theta^H Psi theta. Only the
// first M coordinates of the closed-form direction are used; the conjugate
// half is regenerated from them.
PhaseConfig mm_update_fuc(const PhaseConfig& current, const CMatrix& xi, const CMatrix& psi,
                          double psi_lambda_max);
PhaseConfig mm_update_fuc(const PhaseConfig& current, const CMatrix& xi, const CMatrix& psi);

// One MM step for the IS objective theta^H Xi~ theta: angle(Xi~ theta).
PhaseConfig mm_update_is(const PhaseConfig& current, const CMatrix& xi_tilde);

// Minorizers of the two Step-B objectives around `anchor`, including all
// constants, so that f(anchor | anchor) = g(anchor) and f <= g everywhere on
// the unit-modulus set.
double fuc_ratio(const PhaseConfig& phases, const CMatrix& xi, const CMatrix& psi);
double fuc_surrogate(const PhaseConfig& phases, const PhaseConfig& anchor, const CMatrix& xi,
                     const CMatrix& psi, double psi_lambda_max);
double is_quadratic(const PhaseConfig& phases, const CMatrix& xi_tilde);
double is_surrogate(const PhaseConfig& phases, const PhaseConfig& anchor, const CMatrix& xi_tilde);

// Low-rank form of the FuC Step-B operators for fixed weights. Applies Xi and
// Psi in O(KM) and gets lambda_max(Psi) from a K x K eigenproblem, which the
// AO loop uses instead of forming the 2M x 2M matrices.
class FucStepOperator {
 public:
  FucStepOperator(const CVector& augmented_weights, const ChannelSet& channels,
                  const SensorStats& stats, double noise_power, Hypothesis h);

  [[nodiscard]] CVector apply_xi(const CVector& theta_aug) const;
  [[nodiscard]] CVector apply_psi(const CVector& theta_aug) const;
  [[nodiscard]] double psi_lambda_max() const { return lambda_max_; }
  [[nodiscard]] PhaseConfig mm_update(const PhaseConfig& current) const;

 private:
  CVector xi_factor_;  // Nb^H a
  CMatrix delta0_;     // K x 2M
  RMatrix decision_cov_;  // D_alpha Cov(x|H_i) D_alpha
  double shift_ = 0.0;
  double lambda_max_ = 0.0;
};

enum class Termination { Converged, IterationCap };

constexpr std::string_view to_string(Termination t) {
  return t == Termination::Converged ? "converged" : "iteration_cap";
}

struct AoOptions {
  std::size_t max_iterations = 200;
  double relative_tolerance = 1e-6;
  std::size_t mm_steps = 1;
  bool keep_snapshots = false;
};

struct AoSnapshot {
  CVector augmented_weights;
  RVector phases;
};

// Entry 0 is the objective after the initial Step A; entry t >= 1 follows the
// t-th outer iteration (Step B then Step A).
struct AoTrace {
  std::vector<double> objective;
  std::vector<double> elapsed_seconds;
  std::vector<AoSnapshot> snapshots;
  std::size_t iterations = 0;
  Termination termination = Termination::IterationCap;
};

struct AoResult {
  FusionWeights weights;
  PhaseConfig phases;
  AoTrace trace;
  [[nodiscard]] double objective() const { return trace.objective.back(); }
};

// Alternating optimization: closed-form fusion weights (Step A) and one or
// more MM phase updates (Step B), until the relative objective change drops
// below the tolerance or the iteration cap is hit. Degenerate instances with
// no mean separation keep a fixed unit weight vector and report objective 0.
AoResult ao_joint_design(DesignKind kind, const ChannelSet& channels, const SensorStats& stats,
                         double noise_power, const PhaseConfig& init, const AoOptions& options = {});

// Nearest point of the uniform 2^bits grid, wrap-around aware. Throws for bits == 0.
PhaseConfig quantize_phases(const PhaseConfig& phases, unsigned bits);

}  // namespace holofuse
