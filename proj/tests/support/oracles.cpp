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

#include "oracles.hpp"

#include "holofuse/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

namespace {

CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RandomStream& rng) {
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.complex_normal(1.0);
  }
  return m;
}

// Probability of decision pattern `bits` (bit k set => x_k = +1).
double pattern_probability(const SensorStats& stats, Hypothesis h, std::uint32_t bits) {
  const auto& joint = h == Hypothesis::H1 ? stats.joint_h1 : stats.joint_h0;
  if (joint) return joint->probability(bits);
  const RVector& p = stats.rho(h);
  double prob = 1.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) prob *= ((bits >> k) & 1U) ? p(k) : 1.0 - p(k);
  return prob;
}

RVector pattern(std::uint32_t bits, Eigen::Index K) {
  RVector x(K);
  for (Eigen::Index k = 0; k < K; ++k) x(k) = ((bits >> k) & 1U) ? 1.0 : -1.0;
  return x;
}

CVector stack(const CVector& v) {
  CVector out(2 * v.size());
  out << v, v.conjugate();
  return out;
}

}  // namespace

Instance random_instance(std::size_t K, std::size_t M, std::size_t N, std::uint64_t seed) {
  RandomStream rng(seed);
  const auto k = static_cast<Eigen::Index>(K);
  Instance inst;
  inst.channels.H = gaussian_matrix(static_cast<Eigen::Index>(M), k, rng);
  inst.channels.G = gaussian_matrix(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(M), rng);
  RVector pd(k), pf(k), alpha(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    pf(i) = rng.uniform(0.01, 0.4);
    pd(i) = rng.uniform(pf(i) + 0.05, 0.99);
    alpha(i) = rng.uniform(0.5, 1.5);
  }
  inst.stats = SensorStats::independent(pd, pf, alpha);
  inst.noise_power = rng.uniform(0.1, 2.0) * static_cast<double>(M);
  inst.phases = PhaseConfig::uniform_random(M, rng);
  return inst;
}

Instance scene_instance(std::size_t K, std::size_t M, std::size_t N, std::uint64_t seed) {
  RandomStream rng(seed);
  SceneConfig sc;
  sc.num_sensors = K;
  sc.num_rhs_elements = M;
  sc.num_feeds = N;
  sc.num_digital = 0;
  RandomStream srng = rng.substream("scene");
  const Scene scene = build_scene(sc, srng);
  FadingParams fp;
  RandomStream krng = rng.substream("rician");
  fp.rician_factors = draw_rician_factors(K, 3.0, 5.0, krng);
  Instance inst;
  inst.channels = synthesize_channels(scene, fp, rng.substream("channels"));
  inst.stats = SensorStats::identical(K, 0.5, 0.05);
  inst.noise_power = 1e-8;
  RandomStream prng = rng.substream("phases");
  inst.phases = PhaseConfig::uniform_random(M, prng);
  return inst;
}

AugMoments enumerated_moments(const CMatrix& heff, const SensorStats& stats, double noise_power,
                              Hypothesis h) {
  const Eigen::Index K = heff.cols();
  const Eigen::Index N = heff.rows();
  const std::uint32_t count = 1U << K;
  AugMoments m;
  m.mean = CVector::Zero(2 * N);
  std::vector<CVector> points;
  std::vector<double> probs;
  for (std::uint32_t b = 0; b < count; ++b) {
    const RVector x = pattern(b, K);
    CVector s = CVector::Zero(N);
    for (Eigen::Index k = 0; k < K; ++k) s += heff.col(k) * (stats.alpha(k) * x(k));
    points.push_back(stack(s));
    probs.push_back(pattern_probability(stats, h, b));
    m.mean += probs.back() * points.back();
  }
  m.cov = CMatrix::Zero(2 * N, 2 * N);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const CVector d = points[i] - m.mean;
    m.cov += probs[i] * d * d.adjoint();
  }
  // Circular noise: E[w w^H] = sigma^2 I, E[w w^T] = 0.
  m.cov.diagonal().array() += noise_power;
  return m;
}

double deflection_oracle(DesignKind kind, const CVector& a_aug, const CMatrix& heff,
                         const SensorStats& stats, double noise_power) {
  if (kind == DesignKind::IS) {
    const SensorStats ideal = SensorStats::ideal(stats.alpha);
    const AugMoments m1 = enumerated_moments(heff, ideal, noise_power, Hypothesis::H1);
    const AugMoments m0 = enumerated_moments(heff, ideal, noise_power, Hypothesis::H0);
    return std::norm(a_aug.dot(m1.mean - m0.mean)) / (noise_power * a_aug.squaredNorm());
  }
  const AugMoments m1 = enumerated_moments(heff, stats, noise_power, Hypothesis::H1);
  const AugMoments m0 = enumerated_moments(heff, stats, noise_power, Hypothesis::H0);
  const AugMoments& mi = kind == DesignKind::FuC0 ? m0 : m1;
  return std::norm(a_aug.dot(m1.mean - m0.mean)) / a_aug.dot(mi.cov * a_aug).real();
}

double enumerated_llr(const CVector& y, const CMatrix& heff, const SensorStats& stats,
                      double noise_power) {
  const Eigen::Index K = heff.cols();
  const std::uint32_t count = 1U << K;
  std::vector<long double> expo(count);
  long double peak = -INFINITY;
  for (std::uint32_t b = 0; b < count; ++b) {
    const RVector x = pattern(b, K);
    CVector s = CVector::Zero(heff.rows());
    for (Eigen::Index k = 0; k < K; ++k) s += heff.col(k) * (stats.alpha(k) * x(k));
    long double dist = 0.0L;
    for (Eigen::Index n = 0; n < y.size(); ++n) {
      const long double re = static_cast<long double>(y(n).real()) - s(n).real();
      const long double im = static_cast<long double>(y(n).imag()) - s(n).imag();
      dist += re * re + im * im;
    }
    expo[b] = -dist / noise_power;
    peak = std::max(peak, expo[b]);
  }
  long double num = 0.0L;
  long double den = 0.0L;
  for (std::uint32_t b = 0; b < count; ++b) {
    const long double g = std::exp(expo[b] - peak);
    num += pattern_probability(stats, Hypothesis::H1, b) * g;
    den += pattern_probability(stats, Hypothesis::H0, b) * g;
  }
  return static_cast<double>(std::log(num) - std::log(den));
}

double enumerated_counting_tail(std::size_t K, double p, std::size_t nu) {
  const std::uint32_t count = 1U << K;
  long double total = 0.0L;
  for (std::uint32_t b = 0; b < count; ++b) {
    std::size_t ones = 0;
    long double prob = 1.0L;
    for (std::size_t k = 0; k < K; ++k) {
      const bool on = (b >> k) & 1U;
      ones += on ? 1 : 0;
      prob *= on ? p : 1.0L - p;
    }
    if (ones >= nu) total += prob;
  }
  return static_cast<double>(total);
}

CVector random_augmented_probe(std::size_t N, RandomStream& rng) {
  CVector a(static_cast<Eigen::Index>(N));
  for (Eigen::Index n = 0; n < a.size(); ++n) a(n) = rng.complex_normal(1.0);
  CVector out = stack(a);
  return out / out.norm();
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double sphere_integral(const std::function<double(double)>& f, int panels) {
  // 2 pi * int_{-1}^{1} f(u) du, one Simpson rule per half so that a jump at
  // u = 0 sits on a panel boundary; each half is sampled from its own side.
  if (panels % 2 != 0) ++panels;
  const double h = 1.0 / panels;
  const double below_zero = std::nextafter(0.0, -1.0);
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double u = i * h;
    sum += w * (f(i == 0 ? 0.0 : u) + f(i == 0 ? below_zero : -u));
  }
  return kTwoPi * sum * h / 3.0;
}

double max_eigenvalue(const CMatrix& a) {
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

}  // namespace oracle
