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

#include "holofuse/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace holofuse {

DecisionPmf::DecisionPmf(std::size_t num_sensors, std::vector<double> table)
    : num_sensors_(num_sensors), table_(std::move(table)) {
  if (num_sensors_ == 0 || num_sensors_ > kMaxSensors) {
    throw std::invalid_argument("DecisionPmf: number of sensors must be in [1, 20]");
  }
  if (table_.size() != (std::size_t{1} << num_sensors_)) {
    throw std::invalid_argument("DecisionPmf: table must hold 2^K entries");
  }
  double total = 0.0;
  for (double p : table_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("DecisionPmf: probabilities must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("DecisionPmf: table is not normalized (sum = " +
                                std::to_string(total) + ")");
  }
  cdf_.resize(table_.size());
  std::partial_sum(table_.begin(), table_.end(), cdf_.begin());
}

DecisionPmf DecisionPmf::independent(const RVector& p_plus) {
  const auto K = static_cast<std::size_t>(p_plus.size());
  if (K == 0 || K > kMaxSensors) {
    throw std::invalid_argument("DecisionPmf::independent: K must be in [1, 20]");
  }
  std::vector<double> table(std::size_t{1} << K);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    double p = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double pk = p_plus(static_cast<Eigen::Index>(k));
      p *= ((idx >> k) & 1U) ? pk : 1.0 - pk;
    }
    table[idx] = p;
  }
  return DecisionPmf(K, std::move(table));
}

RVector decision_vector(std::uint32_t index, std::size_t num_sensors) {
  RVector x(static_cast<Eigen::Index>(num_sensors));
  for (std::size_t k = 0; k < num_sensors; ++k) {
    x(static_cast<Eigen::Index>(k)) = ((index >> k) & 1U) ? 1.0 : -1.0;
  }
  return x;
}

RVector DecisionPmf::mean() const {
  RVector m = RVector::Zero(static_cast<Eigen::Index>(num_sensors_));
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    m += table_[idx] * decision_vector(static_cast<std::uint32_t>(idx), num_sensors_);
  }
  return m;
}

RVector DecisionPmf::prob_plus() const { return (mean().array() + 1.0) / 2.0; }

RMatrix DecisionPmf::covariance() const {
  const RVector m = mean();
  const auto K = static_cast<Eigen::Index>(num_sensors_);
  RMatrix c = RMatrix::Zero(K, K);
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    const RVector d = decision_vector(static_cast<std::uint32_t>(idx), num_sensors_) - m;
    c.noalias() += table_[idx] * d * d.transpose();
  }
  return c;
}

std::uint32_t DecisionPmf::sample_index(RandomStream& rng) const {
  const double u = std::generate_canonical<double, 53>(rng.engine()) * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto idx = static_cast<std::size_t>(std::distance(cdf_.begin(), it));
  return static_cast<std::uint32_t>(std::min(idx, cdf_.size() - 1));
}

SensorStats SensorStats::identical(std::size_t num_sensors, double pd, double pf, double alpha) {
  const auto K = static_cast<Eigen::Index>(num_sensors);
  SensorStats s = independent(RVector::Constant(K, pd), RVector::Constant(K, pf),
                              RVector::Constant(K, alpha));
  s.iid = true;
  return s;
}

SensorStats SensorStats::independent(const RVector& pd, const RVector& pf, const RVector& alpha) {
  if (pd.size() != pf.size() || pd.size() != alpha.size() || pd.size() == 0) {
    throw std::invalid_argument("SensorStats: pd, pf and alpha must have equal nonzero length");
  }
  SensorStats s;
  s.rho1 = pd;
  s.rho0 = pf;
  s.alpha = alpha;
  s.cov_h1 = (4.0 * pd.array() * (1.0 - pd.array())).matrix().asDiagonal();
  s.cov_h0 = (4.0 * pf.array() * (1.0 - pf.array())).matrix().asDiagonal();
  s.iid = false;
  s.validate();
  return s;
}

SensorStats SensorStats::from_joint(DecisionPmf h1, DecisionPmf h0, const RVector& alpha) {
  if (h1.num_sensors() != h0.num_sensors() ||
      h1.num_sensors() != static_cast<std::size_t>(alpha.size())) {
    throw std::invalid_argument("SensorStats::from_joint: dimension mismatch");
  }
  SensorStats s;
  s.rho1 = h1.prob_plus();
  s.rho0 = h0.prob_plus();
  s.cov_h1 = h1.covariance();
  s.cov_h0 = h0.covariance();
  s.alpha = alpha;
  s.joint_h1 = std::move(h1);
  s.joint_h0 = std::move(h0);
  s.validate();
  return s;
}

SensorStats SensorStats::ideal(const RVector& alpha) {
  const auto K = alpha.size();
  return independent(RVector::Ones(K), RVector::Zero(K), alpha);
}

DecisionPmf SensorStats::pmf(Hypothesis h) const {
  if (h == Hypothesis::H1 && joint_h1) return *joint_h1;
  if (h == Hypothesis::H0 && joint_h0) return *joint_h0;
  return DecisionPmf::independent(rho(h));
}

void SensorStats::validate() const {
  const auto K = alpha.size();
  if (K == 0 || rho1.size() != K || rho0.size() != K || cov_h1.rows() != K ||
      cov_h1.cols() != K || cov_h0.rows() != K || cov_h0.cols() != K) {
    throw std::invalid_argument("SensorStats: dimension mismatch");
  }
  constexpr double kTol = 1e-12;
  for (Eigen::Index k = 0; k < K; ++k) {
    const double pd = rho1(k);
    const double pf = rho0(k);
    if (!(pd >= -kTol && pd <= 1.0 + kTol) || !(pf >= -kTol && pf <= 1.0 + kTol)) {
      throw std::invalid_argument("SensorStats: probabilities must lie in [0,1] (sensor " +
                                  std::to_string(k) + ")");
    }
    if (pf > pd + kTol) {
      throw std::invalid_argument("SensorStats: P_F exceeds P_D for sensor " + std::to_string(k));
    }
    if (!(alpha(k) > 0.0) || !std::isfinite(alpha(k))) {
      throw std::invalid_argument("SensorStats: alpha must be positive and finite");
    }
  }
}

RVector sample_decisions(const SensorStats& stats, Hypothesis h, RandomStream& rng) {
  const auto& joint = h == Hypothesis::H1 ? stats.joint_h1 : stats.joint_h0;
  if (joint) return decision_vector(joint->sample_index(rng), joint->num_sensors());
  const RVector& p = stats.rho(h);
  RVector x(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (!(p(k) >= 0.0 && p(k) <= 1.0)) {
      throw std::invalid_argument("sample_decisions: probability outside [0,1]");
    }
    x(k) = rng.bernoulli(p(k)) ? 1.0 : -1.0;
  }
  return x;
}

CVector received_signal(const CMatrix& channel_eff, const SensorStats& stats, const RVector& x,
                        double noise_power, RandomStream& rng) {
  if (noise_power < 0.0) throw std::invalid_argument("received_signal: noise power must be >= 0");
  if (channel_eff.cols() != x.size() || stats.alpha.size() != x.size()) {
    throw std::invalid_argument("received_signal: dimension mismatch");
  }
  CVector y = channel_eff * (stats.alpha.array() * x.array()).matrix().cast<Complex>();
  if (noise_power > 0.0) {
    for (Eigen::Index n = 0; n < y.size(); ++n) y(n) += rng.complex_normal(noise_power);
  }
  return y;
}

ConditionalMoments conditional_moments(const CMatrix& channel_eff, const SensorStats& stats,
                                       double noise_power, Hypothesis h) {
  if (channel_eff.cols() != stats.alpha.size()) {
    throw std::invalid_argument("conditional_moments: dimension mismatch");
  }
  const auto N = channel_eff.rows();
  const CMatrix hd = channel_eff * stats.alpha.cast<Complex>().asDiagonal();
  const CMatrix cx = stats.cov(h).cast<Complex>();

  ConditionalMoments m;
  m.mean = hd * (2.0 * stats.rho(h).array() - 1.0).matrix().cast<Complex>();
  m.cov = hd * cx * hd.adjoint() + noise_power * CMatrix::Identity(N, N);
  m.pcov = hd * cx * hd.transpose();
  m.aug_cov.resize(2 * N, 2 * N);
  m.aug_cov.topLeftCorner(N, N) = m.cov;
  m.aug_cov.topRightCorner(N, N) = m.pcov;
  m.aug_cov.bottomLeftCorner(N, N) = m.pcov.conjugate();
  m.aug_cov.bottomRightCorner(N, N) = m.cov.conjugate();
  return m;
}

CVector augment(const CVector& v) {
  CVector out(2 * v.size());
  out << v, v.conjugate();
  return out;
}

CMatrix augment_matrix(const CMatrix& a) {
  CMatrix out(2 * a.rows(), a.cols());
  out << a, a.conjugate();
  return out;
}

}  // namespace holofuse
