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

// Reference computations used only by the tests. Each one takes a different
// route from the library code it checks (enumeration instead of closed forms,
// direct densities instead of log-sum-exp, quadrature, full eigensolvers).

#include "holofuse/channel.hpp"
#include "holofuse/optimizer.hpp"
#include "holofuse/random.hpp"
#include "holofuse/sensing.hpp"
#include "holofuse/types.hpp"

#include <cstdint>
#include <functional>

namespace oracle {

using namespace holofuse;

struct Instance {
  ChannelSet channels;
  SensorStats stats;
  double noise_power = 1.0;
  PhaseConfig phases;
  [[nodiscard]] CMatrix heff() const { return effective_channel(channels, phases.theta()); }
};

// Unit-scale complex Gaussian H and G, conditionally independent sensors with
// random operating points (P_F < P_D), random alpha and noise power.
Instance random_instance(std::size_t K, std::size_t M, std::size_t N, std::uint64_t seed);

// Same sizes, but channels from the physical scene pipeline with the default
// geometry, i.i.d. sensors (0.5, 0.05) and -50 dBm noise.
Instance scene_instance(std::size_t K, std::size_t M, std::size_t N, std::uint64_t seed);

struct AugMoments {
  CVector mean;  // E[y_aug]
  CMatrix cov;   // E[(y_aug - m)(y_aug - m)^H]
};

// Moments of [y; conj(y)] by summing over every decision vector.
AugMoments enumerated_moments(const CMatrix& heff, const SensorStats& stats, double noise_power,
                              Hypothesis h);

// |a^H (m1 - m0)|^2 / (a^H C_i a) from enumerated moments; for IS the
// moments come from ideal sensors and noise-only covariance.
double deflection_oracle(DesignKind kind, const CVector& a_aug, const CMatrix& heff,
                         const SensorStats& stats, double noise_power);

// log p(y|H1) - log p(y|H0) with explicit Gaussian densities, in long double.
double enumerated_llr(const CVector& y, const CMatrix& heff, const SensorStats& stats,
                      double noise_power);

// Pr(at least nu of K independent Bernoulli(p) successes), by enumerating 2^K outcomes.
double enumerated_counting_tail(std::size_t K, double p, std::size_t nu);

// Uniformly oriented unit-norm vector [a; conj(a)] / ||.|| of length 2N.
CVector random_augmented_probe(std::size_t N, RandomStream& rng);

// Standard normal upper tail.
double q_function(double x);

// Integral of f(cos theta) over the unit sphere, composite Simpson in cos theta.
double sphere_integral(const std::function<double(double)>& f, int panels = 20000);

// Largest eigenvalue of a Hermitian matrix from Eigen's full solver.
double max_eigenvalue(const CMatrix& a);

}  // namespace oracle
