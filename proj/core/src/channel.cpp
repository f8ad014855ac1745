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

#include "holofuse/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace holofuse {

double FadingParams::los_weight(std::size_t sensor) const {
  const double kappa = rician_factors.at(sensor);
  return std::sqrt(kappa / (1.0 + kappa));
}

void FadingParams::validate(std::size_t num_sensors) const {
  if (!(mu > 0.0)) throw std::invalid_argument("fading: mu must be > 0");
  if (!(d0 > 0.0)) throw std::invalid_argument("fading: d0 must be > 0");
  if (!(nu >= 0.0)) throw std::invalid_argument("fading: nu must be >= 0");
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument("fading: efficiency must lie in [0,1]");
  }
  if (rician_factors.size() != num_sensors) {
    throw std::invalid_argument("fading: expected " + std::to_string(num_sensors) +
                                " Rician factors, got " + std::to_string(rician_factors.size()));
  }
  for (double kappa : rician_factors) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
      throw std::invalid_argument("fading: Rician factors must be finite and >= 0");
    }
  }
}

std::vector<double> draw_rician_factors(std::size_t num_sensors, double lo_db, double hi_db,
                                        RandomStream& rng) {
  std::vector<double> kappa(num_sensors);
  for (auto& k : kappa) k = db_to_linear(rng.uniform(lo_db, hi_db));
  return kappa;
}

double path_loss(double distance, const FadingParams& params) {
  if (!(distance > 0.0)) throw std::invalid_argument("path_loss: distance must be > 0");
  return params.mu * std::pow(distance / params.d0, -params.nu);
}

CVector upa_steering(double polar, double azimuth, std::size_t side_h, std::size_t side_v,
                     double spacing_h, double spacing_v) {
  const double kh = kTwoPi / kWavelength * spacing_h * std::sin(polar) * std::cos(azimuth);
  const double kv = kTwoPi / kWavelength * spacing_v * std::sin(polar) * std::sin(azimuth);
  CVector a(static_cast<Eigen::Index>(side_h * side_v));
  for (std::size_t iv = 0; iv < side_v; ++iv) {
    for (std::size_t ih = 0; ih < side_h; ++ih) {
      const double phase = static_cast<double>(ih) * kh + static_cast<double>(iv) * kv;
      a(static_cast<Eigen::Index>(iv * side_h + ih)) = std::polar(1.0, phase);
    }
  }
  return a;
}

double directivity(double exponent, double cos_theta) {
  if (exponent < 0.0) throw std::invalid_argument("directivity: exponent must be >= 0");
  if (!(cos_theta >= 0.0)) return 0.0;
  const double c = std::min(cos_theta, 1.0);
  return 2.0 * (2.0 * exponent + 1.0) * std::pow(c, 2.0 * exponent);
}

namespace {

// Shared Rician construction over a square receive grid centred at the RHS.
CMatrix rician_channel(const Scene& scene, const FadingParams& params, std::size_t side,
                       double spacing, RandomStream& rng, std::vector<std::size_t>* blocked) {
  const std::size_t K = scene.num_sensors();
  params.validate(K);
  const auto rows = static_cast<Eigen::Index>(side * side);
  CMatrix H = CMatrix::Zero(rows, static_cast<Eigen::Index>(K));
  for (std::size_t k = 0; k < K; ++k) {
    // Draw order per sensor is fixed (tau, then scattered entries) so the
    // stream layout does not depend on geometry.
    const double tau = rng.uniform(0.0, kTwoPi);
    CVector scattered(rows);
    for (Eigen::Index m = 0; m < rows; ++m) scattered(m) = rng.complex_normal(1.0);

    const ArrivalAngles aoa = arrival_angles(scene, k);
    if (!aoa.in_front) {
      if (blocked) blocked->push_back(k);
      continue;
    }
    const double d = (scene.sensor_positions[k] - scene.rhs_center).norm();
    const double amplitude = std::sqrt(path_loss(d, params));
    const double b = params.los_weight(k);
    const CVector los =
        upa_steering(aoa.polar, aoa.azimuth, side, side, spacing, spacing) * std::polar(1.0, tau);
    H.col(static_cast<Eigen::Index>(k)) =
        amplitude * (b * los + std::sqrt(std::max(0.0, 1.0 - b * b)) * scattered);
  }
  return H;
}

}  // namespace

CMatrix sensor_rhs_channel(const Scene& scene, const FadingParams& params, RandomStream& rng,
                           std::vector<std::size_t>* blocked) {
  return rician_channel(scene, params, scene.rhs_side, scene.rhs_spacing, rng, blocked);
}

CMatrix digital_channel(const Scene& scene, const FadingParams& params, RandomStream& rng,
                        std::vector<std::size_t>* blocked) {
  if (scene.num_digital() == 0) throw std::invalid_argument("digital_channel: scene has no baseline array");
  return rician_channel(scene, params, scene.digital_side, scene.digital_spacing, rng, blocked);
}

CMatrix rhs_feed_channel(const Scene& scene, const FadingParams& params) {
  if (!(params.efficiency >= 0.0 && params.efficiency <= 1.0)) {
    throw std::invalid_argument("rhs_feed_channel: efficiency must lie in [0,1]");
  }
  const std::size_t N = scene.num_feeds();
  const std::size_t M = scene.num_rhs_elements();
  const double q = scene.directivity_exponent;
  const double rhs_aperture = scene.rhs_spacing * scene.rhs_spacing;
  const double feed_aperture = scene.feed_spacing * scene.feed_spacing;
  const double gain_scale = 4.0 * kPi / (kWavelength * kWavelength);

  CMatrix G(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(M));
  for (std::size_t n = 0; n < N; ++n) {
    const Point3& pf = scene.feed_positions[n];
    for (std::size_t m = 0; m < M; ++m) {
      const Point3& pr = scene.rhs_element_positions[m];
      const Point3 d = pf - pr;
      const double dist = d.norm();
      if (!(dist > 0.0)) {
        throw std::invalid_argument("rhs_feed_channel: feed " + std::to_string(n) +
                                    " coincides with RHS element " + std::to_string(m));
      }
      const double cos_rhs = d.dot(scene.rhs_frame.boresight) / dist;
      // Angle between the feed's boresight (toward the RHS centre) and the
      // direction from the feed to element m.
      const double cos_feed = scene.feed_boresights[n].dot(-d / dist);
      const double g_rhs = gain_scale * rhs_aperture * directivity(q, cos_rhs);
      const double g_feed = gain_scale * feed_aperture * directivity(q, cos_feed);
      const double magnitude =
          (kWavelength / (4.0 * kPi)) * std::sqrt(params.efficiency * g_rhs * g_feed) / dist;
      G(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m)) =
          std::polar(magnitude, -kTwoPi / kWavelength * dist);
    }
  }
  return G;
}

ChannelSet synthesize_channels(const Scene& scene, const FadingParams& params,
                               const RandomStream& rng) {
  ChannelSet c;
  RandomStream h_stream = rng.substream("h_rhs");
  c.H = sensor_rhs_channel(scene, params, h_stream, &c.blocked_sensors);
  c.G = rhs_feed_channel(scene, params);
  if (scene.num_digital() > 0) {
    RandomStream d_stream = rng.substream("h_dig");
    c.H_dig = digital_channel(scene, params, d_stream);
  }
  return c;
}

CMatrix effective_channel(const ChannelSet& channels, const CVector& theta) {
  if (theta.size() != channels.H.rows() || channels.G.cols() != channels.H.rows()) {
    throw std::invalid_argument("effective_channel: dimension mismatch");
  }
  return channels.G * theta.asDiagonal() * channels.H;
}

}  // namespace holofuse
