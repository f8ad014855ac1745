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

#include "holofuse/geometry.hpp"
#include "holofuse/random.hpp"
#include "holofuse/types.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace holofuse {

struct FadingParams {
  double mu = 1e-3;  // path loss at the reference distance, linear
  double d0 = 1.0;   // reference distance, wavelengths
  double nu = 2.0;   // path-loss exponent
  std::vector<double> rician_factors;  // kappa_k, linear, one per sensor
  double efficiency = 1.0;             // RHS reflection efficiency eta in [0,1]

  // b_k = sqrt(kappa_k / (1 + kappa_k)).
  [[nodiscard]] double los_weight(std::size_t sensor) const;
  void validate(std::size_t num_sensors) const;
};

// kappa_k ~ Uniform(lo_db, hi_db) in dB, returned in linear scale.
std::vector<double> draw_rician_factors(std::size_t num_sensors, double lo_db, double hi_db,
                                        RandomStream& rng);

// mu * (d / d0)^(-nu). Throws for d <= 0.
double path_loss(double distance, const FadingParams& params);

// Uniform planar array response; entry (m_h, m_v) sits at index m_v * side_h + m_h.
CVector upa_steering(double polar, double azimuth, std::size_t side_h, std::size_t side_v,
                     double spacing_h, double spacing_v);

// 2(2q+1) cos^{2q}(theta) on the front half-space, 0 behind it.
double directivity(double exponent, double cos_theta);

// Sensor -> RHS Rician matrix H (M x K). Sensors behind the RHS plane get a
// zero column; their indices are appended to `blocked` when provided.
CMatrix sensor_rhs_channel(const Scene& scene, const FadingParams& params, RandomStream& rng,
                           std::vector<std::size_t>* blocked = nullptr);

// Deterministic near-field RHS -> feed matrix G (N x M).
CMatrix rhs_feed_channel(const Scene& scene, const FadingParams& params);

// Sensor -> fully-digital baseline matrix (N_dig x K), same Rician factors.
CMatrix digital_channel(const Scene& scene, const FadingParams& params, RandomStream& rng,
                        std::vector<std::size_t>* blocked = nullptr);

struct ChannelSet {
  CMatrix H;                      // M x K
  CMatrix G;                      // N x M
  std::optional<CMatrix> H_dig;   // N_dig x K
  std::vector<std::size_t> blocked_sensors;

  [[nodiscard]] std::size_t num_sensors() const { return static_cast<std::size_t>(H.cols()); }
  [[nodiscard]] std::size_t num_rhs_elements() const { return static_cast<std::size_t>(H.rows()); }
  [[nodiscard]] std::size_t num_feeds() const { return static_cast<std::size_t>(G.rows()); }
};

// Draws H and (when the scene has a baseline array) H_dig from independent
// substreams "h_rhs" and "h_dig" of `rng`; G is computed from the scene.
ChannelSet synthesize_channels(const Scene& scene, const FadingParams& params, const RandomStream& rng);

// H^e(Theta) = G diag(theta) H.
CMatrix effective_channel(const ChannelSet& channels, const CVector& theta);

}  // namespace holofuse
