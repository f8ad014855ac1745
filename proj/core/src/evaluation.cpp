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

#include "holofuse/evaluation.hpp"

#include "holofuse/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace holofuse {

double binomial_standard_error(double p, std::size_t n) {
  if (n == 0) throw std::invalid_argument("binomial_standard_error: n must be >= 1");
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

double RocCurve::se_pf0(std::size_t i) const { return binomial_standard_error(points.at(i).pf0, trials_h0); }
double RocCurve::se_pd0(std::size_t i) const { return binomial_standard_error(points.at(i).pd0, trials_h1); }

RocCurve empirical_roc(std::vector<double> stats_h0, std::vector<double> stats_h1, std::uint64_t seed) {
  if (stats_h0.empty() || stats_h1.empty()) {
    throw std::invalid_argument("empirical_roc: both hypotheses need at least one statistic");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(stats_h0.begin(), stats_h0.end(), finite) ||
      !std::all_of(stats_h1.begin(), stats_h1.end(), finite)) {
    throw std::invalid_argument("empirical_roc: non-finite statistic");
  }
  std::sort(stats_h0.begin(), stats_h0.end());
  std::sort(stats_h1.begin(), stats_h1.end());

  std::vector<double> pooled;
  pooled.reserve(stats_h0.size() + stats_h1.size());
  std::merge(stats_h0.begin(), stats_h0.end(), stats_h1.begin(), stats_h1.end(),
             std::back_inserter(pooled));
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  RocCurve curve;
  curve.trials_h0 = stats_h0.size();
  curve.trials_h1 = stats_h1.size();
  curve.seed = seed;
  curve.points.reserve(pooled.size() + 1);
  curve.points.push_back({-std::numeric_limits<double>::infinity(), 1.0, 1.0});

  const double n0 = static_cast<double>(stats_h0.size());
  const double n1 = static_cast<double>(stats_h1.size());
  auto above = [](const std::vector<double>& s, double g) {
    return static_cast<double>(s.end() - std::upper_bound(s.begin(), s.end(), g));
  };
  for (double g : pooled) curve.points.push_back({g, above(stats_h0, g) / n0, above(stats_h1, g) / n1});
  return curve;
}

RocCurve roc_monte_carlo(const DetectionSystem& system, const FusionRule& rule,
                         std::size_t trials_per_hypothesis, const RandomStream& rng,
                         std::size_t workers) {
  if (trials_per_hypothesis == 0) throw std::invalid_argument("roc_monte_carlo: trials must be >= 1");
  if (!(system.noise_power >= 0.0)) throw std::invalid_argument("roc_monte_carlo: negative noise power");
  system.stats.validate();
  if (system.channel_eff.cols() != system.stats.alpha.size()) {
    throw std::invalid_argument("roc_monte_carlo: channel and sensor count disagree");
  }

  std::optional<LlrEvaluator> llr_eval;
  if (rule.kind() == FusionRule::Kind::Llr) {
    llr_eval.emplace(system.channel_eff, system.stats.alpha, system.noise_power,
                     system.stats.pmf(Hypothesis::H1), system.stats.pmf(Hypothesis::H0));
  } else if (rule.weights().num_feeds() != system.channel_eff.rows()) {
    throw std::invalid_argument("roc_monte_carlo: weights do not match the number of feeds");
  }

  std::vector<double> s0(trials_per_hypothesis);
  std::vector<double> s1(trials_per_hypothesis);
  const std::size_t total = 2 * trials_per_hypothesis;
  const std::size_t chunk = 512;
  const std::size_t chunks = (total + chunk - 1) / chunk;

  parallel_for(chunks, workers, [&](std::size_t c) {
    // The evaluator keeps scratch storage, so each chunk gets its own copy.
    std::optional<LlrEvaluator> local;
    if (llr_eval) local = *llr_eval;
    for (std::size_t j = c * chunk; j < std::min(total, (c + 1) * chunk); ++j) {
      const Hypothesis h = j < trials_per_hypothesis ? Hypothesis::H0 : Hypothesis::H1;
      const std::size_t t = j % trials_per_hypothesis;
      RandomStream trial_rng = rng.substream("mc", static_cast<std::uint64_t>(h), t);
      const RVector x = sample_decisions(system.stats, h, trial_rng);
      const CVector y = received_signal(system.channel_eff, system.stats, x, system.noise_power, trial_rng);
      const double value = local ? (*local)(y) : wl_statistic(rule.weights(), y);
      if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "roc_monte_carlo: non-finite statistic under " << to_string(h) << " at trial " << t
            << " (trial seed " << trial_rng.seed() << ")";
        throw std::runtime_error(msg.str());
      }
      (h == Hypothesis::H0 ? s0 : s1)[t] = value;
    }
  });
  return empirical_roc(std::move(s0), std::move(s1), rng.seed());
}

namespace {

// Distinct pf values in increasing order, each with its best pd.
std::vector<RocPoint> upper_envelope(std::vector<RocPoint> points) {
  if (points.empty()) throw std::invalid_argument("interpolate_detection: empty curve");
  std::sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
    return a.pf0 < b.pf0 || (a.pf0 == b.pf0 && a.pd0 > b.pd0);
  });
  std::vector<RocPoint> hull;
  for (const auto& p : points) {
    if (hull.empty() || p.pf0 > hull.back().pf0) hull.push_back(p);
  }
  return hull;
}

double interpolate_sorted(const std::vector<RocPoint>& hull, double target_pfa) {
  if (!(target_pfa >= hull.front().pf0 && target_pfa <= hull.back().pf0)) {
    throw std::domain_error("interpolate_detection: target false-alarm rate outside the curve");
  }
  const auto hi = std::lower_bound(hull.begin(), hull.end(), target_pfa,
                                   [](const RocPoint& p, double v) { return p.pf0 < v; });
  if (hi->pf0 == target_pfa) return hi->pd0;
  const auto lo = hi - 1;
  const double w = (target_pfa - lo->pf0) / (hi->pf0 - lo->pf0);
  return lo->pd0 + w * (hi->pd0 - lo->pd0);
}

void check_target(const RocCurve& curve, double target_pfa) {
  if (!(target_pfa >= 1.0 / static_cast<double>(curve.trials_h0)) || target_pfa > 1.0) {
    throw std::domain_error("detection_at_pfa: target false-alarm rate below 1/trials or above 1");
  }
}

}  // namespace

double interpolate_detection(std::vector<RocPoint> points, double target_pfa) {
  return interpolate_sorted(upper_envelope(std::move(points)), target_pfa);
}

double detection_at_pfa(const RocCurve& curve, double target_pfa) {
  if (curve.points.empty() || curve.trials_h0 == 0) throw std::invalid_argument("detection_at_pfa: empty curve");
  check_target(curve, target_pfa);
  return interpolate_detection(curve.points, target_pfa);
}

std::vector<double> detection_at_pfa(const RocCurve& curve, const std::vector<double>& targets) {
  if (curve.points.empty() || curve.trials_h0 == 0) throw std::invalid_argument("detection_at_pfa: empty curve");
  for (double t : targets) check_target(curve, t);
  const auto hull = upper_envelope(curve.points);
  std::vector<double> out;
  out.reserve(targets.size());
  for (double t : targets) out.push_back(interpolate_sorted(hull, t));
  return out;
}

double binomial_upper_tail(std::size_t k, std::size_t nu, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_upper_tail: p outside [0,1]");
  if (nu > k) return 0.0;
  double sum = 0.0;
  double coeff = 1.0;  // C(k, i), built incrementally
  for (std::size_t i = 0; i <= k; ++i) {
    if (i > 0) coeff = coeff * static_cast<double>(k - i + 1) / static_cast<double>(i);
    if (i >= nu) sum += coeff * std::pow(p, static_cast<double>(i)) * std::pow(1.0 - p, static_cast<double>(k - i));
  }
  return sum;
}

std::vector<ObservationPoint> observation_bound(std::size_t num_sensors, double pd, double pf) {
  if (!(pf >= 0.0 && pf <= pd && pd <= 1.0)) {
    throw std::invalid_argument("observation_bound: need 0 <= P_F <= P_D <= 1");
  }
  std::vector<ObservationPoint> out;
  out.reserve(num_sensors + 1);
  for (std::size_t nu = 0; nu <= num_sensors; ++nu) {
    out.push_back({nu, binomial_upper_tail(num_sensors, nu, pf), binomial_upper_tail(num_sensors, nu, pd)});
  }
  return out;
}

double observation_bound_at_pfa(std::size_t num_sensors, double pd, double pf, double target_pfa) {
  std::vector<RocPoint> pts;
  for (const auto& o : observation_bound(num_sensors, pd, pf)) pts.push_back({static_cast<double>(o.nu), o.pf0, o.pd0});
  // nu = K + 1 (never decide H1) closes the curve at the origin.
  pts.push_back({static_cast<double>(num_sensors + 1), 0.0, 0.0});
  return interpolate_detection(std::move(pts), target_pfa);
}

void PowerModel::validate() const {
  for (double e : {eps_tx_sensor, eps_rhs, eps_rx_feed, eps_static}) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("PowerModel: powers must be finite and >= 0");
  }
  if (alpha.size() != 0 && static_cast<std::size_t>(alpha.size()) != num_sensors) {
    throw std::invalid_argument("PowerModel: alpha length must equal K");
  }
}

PowerComparison power_comparison(const PowerModel& model) {
  model.validate();
  const double transmit = model.alpha.size() == 0 ? static_cast<double>(model.num_sensors)
                                                  : model.alpha.squaredNorm();
  const double sensors = transmit + static_cast<double>(model.num_sensors) * model.eps_tx_sensor;
  const double rx_holo = static_cast<double>(model.num_rhs_elements) * model.eps_rhs +
                         static_cast<double>(model.num_feeds) * model.eps_rx_feed;
  const double rx_dig = static_cast<double>(model.num_digital) * model.eps_rx_feed;
  if (!(rx_holo > 0.0)) throw std::domain_error("power_comparison: holographic receive power is zero");
  return {sensors + rx_holo + model.eps_static, sensors + rx_dig + model.eps_static, rx_dig / rx_holo};
}

AveragedDetection average_detection(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("average_detection: no values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return {mean, se, values.size()};
}

}  // namespace holofuse
