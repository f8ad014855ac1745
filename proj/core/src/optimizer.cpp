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

#include "holofuse/optimizer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace holofuse {

double canonical_phase(double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("phase must be finite");
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

PhaseConfig::PhaseConfig(RVector phases) : phases_(std::move(phases)) {
  for (Eigen::Index m = 0; m < phases_.size(); ++m) phases_(m) = canonical_phase(phases_(m));
}

PhaseConfig PhaseConfig::zeros(std::size_t num_elements) {
  return PhaseConfig(RVector::Zero(static_cast<Eigen::Index>(num_elements)));
}

PhaseConfig PhaseConfig::uniform_random(std::size_t num_elements, RandomStream& rng) {
  RVector p(static_cast<Eigen::Index>(num_elements));
  for (Eigen::Index m = 0; m < p.size(); ++m) p(m) = rng.uniform(0.0, kTwoPi);
  return PhaseConfig(std::move(p));
}

PhaseConfig PhaseConfig::from_angles(const CVector& v, const PhaseConfig& fallback) {
  if (static_cast<std::size_t>(v.size()) != fallback.size()) {
    throw std::invalid_argument("PhaseConfig::from_angles: dimension mismatch");
  }
  RVector p = fallback.phases();
  for (Eigen::Index m = 0; m < v.size(); ++m) {
    if (std::abs(v(m)) > 0.0) p(m) = std::arg(v(m));
  }
  return PhaseConfig(std::move(p));
}

CVector PhaseConfig::theta() const {
  CVector t(phases_.size());
  for (Eigen::Index m = 0; m < phases_.size(); ++m) t(m) = std::polar(1.0, phases_(m));
  return t;
}

CVector PhaseConfig::theta_aug() const { return augment(theta()); }

CMatrix build_signature_matrix(const ChannelSet& channels, const RVector& alpha,
                               const RVector& target) {
  if (alpha.size() != channels.H.cols() || target.size() != channels.H.cols() ||
      channels.G.cols() != channels.H.rows()) {
    throw std::invalid_argument("build_signature_matrix: dimension mismatch");
  }
  const CVector s = channels.H * (alpha.array() * target.array()).matrix().cast<Complex>();
  return channels.G * s.asDiagonal();
}

CMatrix augment_block(const CMatrix& signature) {
  const auto n = signature.rows();
  const auto m = signature.cols();
  CMatrix out = CMatrix::Zero(2 * n, 2 * m);
  out.topLeftCorner(n, m) = signature;
  out.bottomRightCorner(n, m) = signature.conjugate();
  return out;
}

CMatrix build_xi(const CVector& augmented_weights, const CMatrix& signature_block) {
  if (augmented_weights.size() != signature_block.rows()) {
    throw std::invalid_argument("build_xi: dimension mismatch");
  }
  const CVector u = signature_block.adjoint() * augmented_weights;
  return u * u.adjoint();
}

namespace {

// Delta0 = [conj(D_r), D_r], D_r = H^H diag(G^H a).
CMatrix build_delta0(const CVector& augmented_weights, const ChannelSet& channels) {
  const auto N = channels.G.rows();
  const auto M = channels.G.cols();
  if (augmented_weights.size() != 2 * N || channels.H.rows() != M) {
    throw std::invalid_argument("build_psi: dimension mismatch");
  }
  const CVector ga = channels.G.adjoint() * augmented_weights.head(N);
  const CMatrix dr = channels.H.adjoint() * ga.asDiagonal();
  CMatrix delta0(dr.rows(), 2 * M);
  delta0 << dr.conjugate(), dr;
  return delta0;
}

RMatrix weighted_decision_cov(const SensorStats& stats, Hypothesis h) {
  return stats.alpha.asDiagonal() * stats.cov(h) * stats.alpha.asDiagonal();
}

double noise_shift(const CVector& augmented_weights, double noise_power, Eigen::Index M) {
  if (!(noise_power > 0.0)) throw std::invalid_argument("build_psi: noise power must be > 0");
  return noise_power / (2.0 * static_cast<double>(M)) * augmented_weights.squaredNorm();
}

// Closed-form MM direction for the ratio objective given the products
// Xi theta and Psi theta.
CVector fuc_direction(const CVector& theta_aug, const CVector& xi_theta, const CVector& psi_theta,
                      double lam) {
  const double t = theta_aug.dot(xi_theta).real();
  const double c = theta_aug.dot(psi_theta).real();
  if (!(c > 0.0)) throw std::domain_error("mm_update_fuc: zero denominator quadratic form");
  return xi_theta / c - (t / (c * c)) * (psi_theta - lam * theta_aug);
}

PhaseConfig from_first_half(const CVector& direction, const PhaseConfig& current) {
  return PhaseConfig::from_angles(direction.head(static_cast<Eigen::Index>(current.size())), current);
}

void require_square(const CMatrix& a, Eigen::Index n, const char* what) {
  if (a.rows() != n || a.cols() != n) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

CMatrix build_psi(const CVector& augmented_weights, const ChannelSet& channels,
                  const SensorStats& stats, double noise_power, Hypothesis h) {
  if (stats.alpha.size() != channels.H.cols()) throw std::invalid_argument("build_psi: dimension mismatch");
  const CMatrix delta0 = build_delta0(augmented_weights, channels);
  const auto M2 = delta0.cols();
  const double shift = noise_shift(augmented_weights, noise_power, M2 / 2);
  CMatrix psi = delta0.adjoint() * weighted_decision_cov(stats, h).cast<Complex>() * delta0;
  psi.diagonal().array() += shift;
  return psi;
}

double lambda_max(const CMatrix& psi) {
  const auto n = psi.rows();
  if (n == 0 || psi.cols() != n) throw std::invalid_argument("lambda_max: matrix must be square and nonempty");
  const double scale = psi.norm();
  if (!std::isfinite(scale)) throw std::invalid_argument("lambda_max: non-finite entries");
  if ((psi - psi.adjoint()).norm() > 1e-8 * std::max(scale, std::numeric_limits<double>::min())) {
    throw std::invalid_argument("lambda_max: matrix is not Hermitian");
  }
  if (scale == 0.0) return 0.0;
  if (n == 1) return psi(0, 0).real();

  // Fixed, generic start vector (not aligned with any coordinate structure).
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1);
    v(i) = Complex(1.0 + 0.5 * std::cos(1.618033988749895 * x), 0.5 * std::sin(2.414213562373095 * x));
  }
  v.normalize();

  constexpr int kMaxIterations = 500;
  constexpr double kResidualTolerance = 1e-11;
  CVector w(n);
  for (int it = 0; it < kMaxIterations; ++it) {
    w.noalias() = psi * v;
    const double rq = v.dot(w).real();
    const double residual = (w - rq * v).norm();
    if (rq > 0.0 && residual <= kResidualTolerance * rq) return rq;
    const double wn = w.norm();
    if (!(wn > 0.0)) break;
    v = w / wn;
  }
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(psi, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

PhaseConfig mm_update_fuc(const PhaseConfig& current, const CMatrix& xi, const CMatrix& psi,
                          double psi_lambda_max) {
  const CVector th = current.theta_aug();
  require_square(xi, th.size(), "mm_update_fuc");
  require_square(psi, th.size(), "mm_update_fuc");
  return from_first_half(fuc_direction(th, xi * th, psi * th, psi_lambda_max), current);
}

PhaseConfig mm_update_fuc(const PhaseConfig& current, const CMatrix& xi, const CMatrix& psi) {
  return mm_update_fuc(current, xi, psi, lambda_max(psi));
}

PhaseConfig mm_update_is(const PhaseConfig& current, const CMatrix& xi_tilde) {
  const CVector th = current.theta_aug();
  require_square(xi_tilde, th.size(), "mm_update_is");
  return from_first_half(xi_tilde * th, current);
}

double fuc_ratio(const PhaseConfig& phases, const CMatrix& xi, const CMatrix& psi) {
  const CVector th = phases.theta_aug();
  return th.dot(xi * th).real() / th.dot(psi * th).real();
}

double fuc_surrogate(const PhaseConfig& phases, const PhaseConfig& anchor, const CMatrix& xi,
                     const CMatrix& psi, double psi_lambda_max) {
  const CVector th = phases.theta_aug();
  const CVector th0 = anchor.theta_aug();
  const CVector xi0 = xi * th0;
  const CVector psi0 = psi * th0;
  const double t = th0.dot(xi0).real();
  const double c = th0.dot(psi0).real();
  const CVector shifted0 = psi0 - psi_lambda_max * th0;  // (Psi - lambda I) theta0
  const double linear = 2.0 * xi0.dot(th).real() / c;
  const double quad_bound = 2.0 * shifted0.dot(th).real() - th0.dot(shifted0).real() +
                            psi_lambda_max * th.squaredNorm();
  return linear - (t / (c * c)) * quad_bound;
}

double is_quadratic(const PhaseConfig& phases, const CMatrix& xi_tilde) {
  const CVector th = phases.theta_aug();
  return th.dot(xi_tilde * th).real();
}

double is_surrogate(const PhaseConfig& phases, const PhaseConfig& anchor, const CMatrix& xi_tilde) {
  const CVector th = phases.theta_aug();
  const CVector th0 = anchor.theta_aug();
  const CVector xi0 = xi_tilde * th0;
  return 2.0 * xi0.dot(th).real() - th0.dot(xi0).real();
}

FucStepOperator::FucStepOperator(const CVector& augmented_weights, const ChannelSet& channels,
                                 const SensorStats& stats, double noise_power, Hypothesis h) {
  const CMatrix signature = build_signature_matrix(channels, stats.alpha, stats.rho10());
  const auto N = signature.rows();
  const CVector u = signature.adjoint() * augmented_weights.head(N);
  xi_factor_ = augment(u);
  delta0_ = build_delta0(augmented_weights, channels);
  decision_cov_ = weighted_decision_cov(stats, h);
  shift_ = noise_shift(augmented_weights, noise_power, signature.cols());

  // Nonzero spectrum of Delta0^H B Delta0 equals that of B^{1/2} (Delta0 Delta0^H) B^{1/2}.
  const Eigen::SelfAdjointEigenSolver<RMatrix> bsolve(decision_cov_);
  const RVector sqrt_vals = bsolve.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const RMatrix b_half = bsolve.eigenvectors() * sqrt_vals.asDiagonal() * bsolve.eigenvectors().transpose();
  const RMatrix gram = (delta0_ * delta0_.adjoint()).real();
  const RMatrix core = b_half * gram * b_half;
  const Eigen::SelfAdjointEigenSolver<RMatrix> csolve(0.5 * (core + core.transpose()),
                                                      Eigen::EigenvaluesOnly);
  lambda_max_ = shift_ + std::max(0.0, csolve.eigenvalues().maxCoeff());
}

CVector FucStepOperator::apply_xi(const CVector& theta_aug) const {
  return xi_factor_ * xi_factor_.dot(theta_aug);
}

CVector FucStepOperator::apply_psi(const CVector& theta_aug) const {
  const CVector inner = decision_cov_.cast<Complex>() * (delta0_ * theta_aug);
  return delta0_.adjoint() * inner + shift_ * theta_aug;
}

PhaseConfig FucStepOperator::mm_update(const PhaseConfig& current) const {
  const CVector th = current.theta_aug();
  return from_first_half(fuc_direction(th, apply_xi(th), apply_psi(th), lambda_max_), current);
}

namespace {

FusionWeights fallback_weights(Eigen::Index num_feeds) {
  CVector e = CVector::Zero(num_feeds);
  e(0) = 1.0;
  return FusionWeights::from_half(e);
}

// Step A, keeping a fixed unit vector when the instance has no mean separation.
FusionWeights step_a(DesignKind kind, const CMatrix& heff, const SensorStats& stats,
                     double noise_power) {
  const CVector target = kind == DesignKind::IS ? is_target(heff, stats) : fuc_target(heff, stats);
  if (!(target.norm() > 0.0)) return fallback_weights(heff.rows());
  return optimal_weights(kind, heff, stats, noise_power);
}

PhaseConfig step_b_is(const FusionWeights& weights, const ChannelSet& channels,
                      const SensorStats& stats, const PhaseConfig& current) {
  const CMatrix signature =
      build_signature_matrix(channels, stats.alpha, RVector::Ones(stats.alpha.size()));
  const CVector u = signature.adjoint() * weights.half();
  // Xi~ theta_aug = [u; conj(u)] * 2 Re(u^H theta).
  const double scale = 2.0 * u.dot(current.theta()).real();
  return PhaseConfig::from_angles(u * scale, current);
}

}  // namespace

AoResult ao_joint_design(DesignKind kind, const ChannelSet& channels, const SensorStats& stats,
                         double noise_power, const PhaseConfig& init, const AoOptions& options) {
  if (init.size() != channels.num_rhs_elements()) {
    throw std::invalid_argument("ao_joint_design: initial phases do not match M");
  }
  if (options.max_iterations == 0 || options.mm_steps == 0) {
    throw std::invalid_argument("ao_joint_design: iteration counts must be >= 1");
  }
  if (!(noise_power > 0.0)) throw std::invalid_argument("ao_joint_design: noise power must be > 0");
  stats.validate();

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  AoResult r;
  r.phases = init;
  auto heff = [&] { return effective_channel(channels, r.phases.theta()); };
  auto record = [&] {
    r.trace.objective.push_back(deflection(kind, r.weights, heff(), stats, noise_power));
    r.trace.elapsed_seconds.push_back(elapsed());
    if (options.keep_snapshots) r.trace.snapshots.push_back({r.weights.augmented(), r.phases.phases()});
  };

  r.weights = step_a(kind, heff(), stats, noise_power);
  record();

  const Hypothesis h = conditioning_hypothesis(kind);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    if (kind == DesignKind::IS) {
      for (std::size_t s = 0; s < options.mm_steps; ++s) {
        r.phases = step_b_is(r.weights, channels, stats, r.phases);
      }
    } else {
      const FucStepOperator op(r.weights.augmented(), channels, stats, noise_power, h);
      for (std::size_t s = 0; s < options.mm_steps; ++s) r.phases = op.mm_update(r.phases);
    }
    r.weights = step_a(kind, heff(), stats, noise_power);
    record();
    r.trace.iterations = it;

    const double prev = r.trace.objective[r.trace.objective.size() - 2];
    const double curr = r.trace.objective.back();
    if (std::abs(curr - prev) <= options.relative_tolerance * std::abs(curr)) {
      r.trace.termination = Termination::Converged;
      break;
    }
  }
  return r;
}

PhaseConfig quantize_phases(const PhaseConfig& phases, unsigned bits) {
  if (bits == 0) throw std::invalid_argument("quantize_phases: bits must be >= 1");
  if (bits > 30) throw std::invalid_argument("quantize_phases: bits must be <= 30");
  const auto levels = static_cast<long long>(1) << bits;
  const double step = kTwoPi / static_cast<double>(levels);
  RVector q(phases.phases().size());
  for (Eigen::Index m = 0; m < q.size(); ++m) {
    const long long k = std::llround(phases.phases()(m) / step) % levels;
    q(m) = static_cast<double>(k) * step;
  }
  return PhaseConfig(std::move(q));
}

}  // namespace holofuse
