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

#include "holofuse/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace holofuse {

FusionWeights::FusionWeights(CVector augmented) : augmented_(std::move(augmented)) {
  if (augmented_.size() == 0 || augmented_.size() % 2 != 0) {
    throw std::invalid_argument("FusionWeights: augmented vector must have even nonzero length");
  }
  const double n = augmented_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("FusionWeights: weights must be nonzero and finite");
  }
  augmented_ /= n;
}

FusionWeights FusionWeights::from_half(const CVector& a) { return FusionWeights(augment(a)); }

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_table(const std::vector<double>& p) {
  std::vector<double> out(p.size());
  std::transform(p.begin(), p.end(), out.begin(), [](double v) { return v > 0.0 ? std::log(v) : kNegInf; });
  return out;
}

// max_x (e_x + log p_x)
double peak(const RVector& e, const std::vector<double>& log_p) {
  double best = kNegInf;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    const double lp = log_p[static_cast<std::size_t>(i)];
    if (lp != kNegInf) best = std::max(best, e(i) + lp);
  }
  return best;
}

double log_sum_exp(const RVector& e, const std::vector<double>& log_p, double best) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    const double lp = log_p[static_cast<std::size_t>(i)];
    if (lp == kNegInf) continue;
    const double t = e(i) + lp - best;
    if (t > -745.0) acc += std::exp(t);
  }
  return best + std::log(acc);
}

// Beyond this gap the two sums share no useful scale and cancellation is moot.
constexpr double kSharedShiftGap = 40.0;

}  // namespace

LlrEvaluator::LlrEvaluator(const CMatrix& channel_eff, const RVector& alpha, double noise_power,
                           const DecisionPmf& pmf_h1, const DecisionPmf& pmf_h0)
    : p1_(pmf_h1.table()),
      p0_(pmf_h0.table()),
      log_p1_(log_table(p1_)),
      log_p0_(log_table(p0_)),
      noise_power_(noise_power) {
  const std::size_t K = pmf_h1.num_sensors();
  if (pmf_h0.num_sensors() != K || static_cast<std::size_t>(channel_eff.cols()) != K ||
      static_cast<std::size_t>(alpha.size()) != K) {
    throw std::invalid_argument("llr: dimension mismatch between channel, alpha and pmfs");
  }
  if (!(noise_power > 0.0)) throw std::invalid_argument("llr: noise power must be > 0");
  const auto count = static_cast<Eigen::Index>(std::size_t{1} << K);
  const CMatrix hd = channel_eff * alpha.cast<Complex>().asDiagonal();
  points_.resize(channel_eff.rows(), count);
  for (Eigen::Index i = 0; i < count; ++i) {
    points_.col(i) = hd * decision_vector(static_cast<std::uint32_t>(i), K).cast<Complex>();
  }
  exponent_.resize(count);
}

double LlrEvaluator::operator()(const CVector& y) const {
  if (y.size() != points_.rows()) throw std::invalid_argument("llr: y has wrong length");
  exponent_.noalias() = (points_.colwise() - y).colwise().squaredNorm().transpose() / -noise_power_;
  const double b1 = peak(exponent_, log_p1_);
  const double b0 = peak(exponent_, log_p0_);
  if (std::abs(b1 - b0) > kSharedShiftGap) {
    return log_sum_exp(exponent_, log_p1_, b1) - log_sum_exp(exponent_, log_p0_, b0);
  }
  // Common shift: sum0 = sum_x w_x p0(x), diff = sum_x w_x (p1(x) - p0(x)).
  const double shift = std::max(b1, b0);
  double sum0 = 0.0, diff = 0.0;
  for (Eigen::Index i = 0; i < points_.cols(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (p1_[k] == 0.0 && p0_[k] == 0.0) continue;
    const double w = std::exp(exponent_(i) - shift);
    sum0 += w * p0_[k];
    diff += w * (p1_[k] - p0_[k]);
  }
  return std::log1p(diff / sum0);
}

double llr(const CVector& y, const CMatrix& channel_eff, const SensorStats& stats,
           double noise_power) {
  return llr(y, channel_eff, stats.alpha, noise_power, stats.pmf(Hypothesis::H1),
             stats.pmf(Hypothesis::H0));
}

double llr(const CVector& y, const CMatrix& channel_eff, const RVector& alpha, double noise_power,
           const DecisionPmf& pmf_h1, const DecisionPmf& pmf_h0) {
  return LlrEvaluator(channel_eff, alpha, noise_power, pmf_h1, pmf_h0)(y);
}

double wl_statistic(const FusionWeights& weights, const CVector& y) {
  if (2 * y.size() != weights.augmented().size()) {
    throw std::invalid_argument("wl_statistic: dimension mismatch");
  }
  const Complex s = weights.augmented().dot(augment(y));  // dot() conjugates the left operand
  if (std::abs(s.imag()) > 1e-10 * std::max(y.norm(), std::numeric_limits<double>::min())) {
    throw std::logic_error("wl_statistic: weights lack conjugate-pair structure");
  }
  return s.real();
}

CVector fuc_target(const CMatrix& channel_eff, const SensorStats& stats) {
  if (channel_eff.cols() != stats.alpha.size()) throw std::invalid_argument("fuc_target: dimension mismatch");
  return augment(channel_eff * (stats.alpha.array() * stats.rho10().array()).matrix().cast<Complex>());
}

CVector is_target(const CMatrix& channel_eff, const SensorStats& stats) {
  if (channel_eff.cols() != stats.alpha.size()) throw std::invalid_argument("is_target: dimension mismatch");
  return augment(channel_eff * stats.alpha.cast<Complex>());
}

double deflection(DesignKind kind, const CVector& a, const CMatrix& channel_eff,
                  const SensorStats& stats, double noise_power) {
  if (a.size() != 2 * channel_eff.rows()) throw std::invalid_argument("deflection: dimension mismatch");
  if (kind == DesignKind::IS) {
    if (!(noise_power > 0.0)) throw std::invalid_argument("deflection: IS metric needs noise power > 0");
    const double den = a.squaredNorm();
    if (!(den > 0.0)) throw std::invalid_argument("deflection: zero weights");
    return 4.0 / noise_power * std::norm(a.dot(is_target(channel_eff, stats))) / den;
  }
  const ConditionalMoments m =
      conditional_moments(channel_eff, stats, noise_power, conditioning_hypothesis(kind));
  const double den = a.dot(m.aug_cov * a).real();
  if (!(den > 0.0)) throw std::invalid_argument("deflection: zero denominator");
  return 4.0 * std::norm(a.dot(fuc_target(channel_eff, stats))) / den;
}

double deflection(DesignKind kind, const FusionWeights& weights, const CMatrix& channel_eff,
                  const SensorStats& stats, double noise_power) {
  return deflection(kind, weights.augmented(), channel_eff, stats, noise_power);
}

FusionWeights optimal_weights_fuc(Hypothesis h, const CMatrix& channel_eff,
                                  const SensorStats& stats, double noise_power) {
  const CVector t = fuc_target(channel_eff, stats);
  if (!(t.norm() > 0.0)) throw std::domain_error("optimal_weights_fuc: zero mean separation");
  const ConditionalMoments m = conditional_moments(channel_eff, stats, noise_power, h);
  const Eigen::LLT<CMatrix> llt(m.aug_cov);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("optimal_weights_fuc: augmented covariance is not positive definite");
  }
  return FusionWeights(llt.solve(t));
}

FusionWeights optimal_weights_is(const CMatrix& channel_eff, const SensorStats& stats) {
  const CVector t = is_target(channel_eff, stats);
  if (!(t.norm() > 0.0)) throw std::domain_error("optimal_weights_is: zero effective channel sum");
  return FusionWeights(t);
}

FusionWeights optimal_weights(DesignKind kind, const CMatrix& channel_eff,
                              const SensorStats& stats, double noise_power) {
  if (kind == DesignKind::IS) return optimal_weights_is(channel_eff, stats);
  return optimal_weights_fuc(conditioning_hypothesis(kind), channel_eff, stats, noise_power);
}

}  // namespace holofuse
