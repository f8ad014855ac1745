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

#include "holofuse/experiment.hpp"

#include "holofuse/channel.hpp"
#include "holofuse/fusion.hpp"
#include "holofuse/optimizer.hpp"
#include "holofuse/parallel.hpp"
#include "holofuse/random.hpp"
#include "holofuse/sensing.hpp"
#include "holofuse/serialization.hpp"
#include "holofuse/version.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace holofuse {

using nlohmann::json;

double ExperimentConfig::noise_power() const {
  return noise_watts ? *noise_watts : dbm_to_watts(noise_dbm);
}

// ---- config <-> json ------------------------------------------------------

namespace {

void to_json_value(json& j, const Point3& p) { j = json::array({p.x(), p.y(), p.z()}); }
void from_json_value(const json& j, Point3& p) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-element array");
  p = Point3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}
void to_json_value(json& j, const Box& b) {
  json lo, hi;
  to_json_value(lo, b.lo);
  to_json_value(hi, b.hi);
  j = {{"lo", lo}, {"hi", hi}};
}
void from_json_value(const json& j, Box& b) {
  from_json_value(j.at("lo"), b.lo);
  from_json_value(j.at("hi"), b.hi);
}
template <typename T>
void to_json_value(json& j, const std::optional<T>& v) {
  j = v ? json(*v) : json(nullptr);
}
template <typename T>
void from_json_value(const json& j, std::optional<T>& v) {
  if (j.is_null()) {
    v.reset();
  } else {
    v = j.get<T>();
  }
}
template <typename T>
void to_json_value(json& j, const T& v) {
  j = v;
}
template <typename T>
void from_json_value(const json& j, T& v) {
  v = j.get<T>();
}

struct Field {
  const char* section;
  const char* key;
  std::function<json()> get;
  std::function<void(const json&)> set;
};

template <typename T>
Field bind(const char* section, const char* key, T& member) {
  return {section, key,
          [&member] {
            json j;
            to_json_value(j, member);
            return j;
          },
          [&member](const json& j) { from_json_value(j, member); }};
}

// Every persisted field, in output order. `threads` and `output_dir` are
// execution details and stay out of the artifacts.
std::vector<Field> fields(ExperimentConfig& c) {
  return {
      bind("", "scenario", c.scenario),
      bind("scene", "num_sensors", c.num_sensors),
      bind("scene", "num_digital", c.num_digital),
      bind("scene", "rhs_spacing", c.rhs_spacing),
      bind("scene", "feed_spacing", c.feed_spacing),
      bind("scene", "digital_spacing", c.digital_spacing),
      bind("scene", "directivity_exponent", c.directivity_exponent),
      bind("scene", "sensor_box", c.sensor_box),
      bind("scene", "rhs_center", c.rhs_center),
      bind("scene", "feed_center", c.feed_center),
      bind("fading", "path_loss_db", c.path_loss_db),
      bind("fading", "reference_distance", c.reference_distance),
      bind("fading", "path_loss_exponent", c.path_loss_exponent),
      bind("fading", "rician_db_lo", c.rician_db_lo),
      bind("fading", "rician_db_hi", c.rician_db_hi),
      bind("fading", "efficiency", c.efficiency),
      bind("sensing", "pd", c.pd),
      bind("sensing", "pf", c.pf),
      bind("sensing", "alpha", c.alpha),
      bind("sensing", "noise_dbm", c.noise_dbm),
      bind("sensing", "noise_watts", c.noise_watts),
      bind("grids", "roc_num_rhs", c.roc_num_rhs),
      bind("grids", "roc_num_feeds", c.roc_num_feeds),
      bind("grids", "m_list", c.m_list),
      bind("grids", "n_list", c.n_list),
      bind("grids", "k_list", c.k_list),
      bind("grids", "sweep_num_rhs", c.sweep_num_rhs),
      bind("grids", "sweep_num_feeds", c.sweep_num_feeds),
      bind("grids", "bits_list", c.bits_list),
      bind("optimizer", "max_iterations", c.ao_max_iterations),
      bind("optimizer", "tolerance", c.ao_tolerance),
      bind("optimizer", "mm_steps", c.ao_mm_steps),
      bind("monte_carlo", "trials", c.trials),
      bind("monte_carlo", "realizations", c.realizations),
      bind("monte_carlo", "seed", c.seed),
      bind("monte_carlo", "target_pfa", c.target_pfa),
      bind("monte_carlo", "roc_grid_points", c.roc_grid_points),
      bind("power", "eps_tx_sensor", c.eps_tx_sensor),
      bind("power", "eps_rhs", c.eps_rhs),
      bind("power", "eps_rx_feed", c.eps_rx_feed),
      bind("power", "eps_static", c.eps_static),
      bind("power", "num_rhs", c.power_num_rhs),
      bind("power", "num_feeds", c.power_num_feeds),
  };
}

json config_json(const ExperimentConfig& config) {
  ExperimentConfig copy = config;
  json j = json::object();
  for (const auto& f : fields(copy)) {
    if (*f.section == '\0') {
      j[f.key] = f.get();
    } else {
      j[f.section][f.key] = f.get();
    }
  }
  return j;
}

bool is_square(std::size_t n) {
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << v;
  return s.str();
}

}  // namespace

std::string ExperimentConfig::to_json() const { return config_json(*this).dump(2); }

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(config_json(*this).dump()); }

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

  ExperimentConfig c;
  auto fs = fields(c);
  std::set<std::string> sections;
  for (const auto& f : fs) {
    if (*f.section != '\0') sections.insert(f.section);
  }
  auto find_field = [&](const std::string& section, const std::string& key) -> Field* {
    for (auto& f : fs) {
      if (section == f.section && key == f.key) return &f;
    }
    return nullptr;
  };
  auto assign = [](Field& f, const json& v, const std::string& path) {
    try {
      f.set(v);
    } catch (const std::exception& e) {
      throw std::invalid_argument("config: bad value for " + path + ": " + e.what());
    }
  };
  for (const auto& [key, value] : j.items()) {
    if (sections.count(key) != 0) {
      if (!value.is_object()) throw std::invalid_argument("config: section " + key + " must be an object");
      for (const auto& [sub, v] : value.items()) {
        Field* f = find_field(key, sub);
        if (f == nullptr) throw std::invalid_argument("config: unknown key " + key + "." + sub);
        assign(*f, v, key + "." + sub);
      }
    } else if (Field* f = find_field("", key)) {
      assign(*f, value, key);
    } else {
      throw std::invalid_argument("config: unknown key " + key);
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> v;
  auto need = [&v](bool ok, const std::string& message) {
    if (!ok) v.push_back(message);
  };
  auto finite = [](double x) { return std::isfinite(x); };

  need(std::any_of(std::begin(kScenarioIds), std::end(kScenarioIds),
                   [&](const char* id) { return scenario == id; }),
       "scenario: must be one of roc_design, pd_vs_M, pd_vs_K, quantization, power_table");

  need(num_sensors >= 1 && num_sensors <= DecisionPmf::kMaxSensors, "scene.num_sensors: must be in [1, 20]");
  need(is_square(num_digital), "scene.num_digital: must be a perfect square");
  need(scenario != "pd_vs_M" || num_digital >= 1, "scene.num_digital: pd_vs_M needs a digital baseline (>= 1)");
  need(rhs_spacing > 0.0 && finite(rhs_spacing), "scene.rhs_spacing: must be > 0");
  need(feed_spacing > 0.0 && finite(feed_spacing), "scene.feed_spacing: must be > 0");
  need(digital_spacing > 0.0 && finite(digital_spacing), "scene.digital_spacing: must be > 0");
  need(directivity_exponent >= 0.0 && finite(directivity_exponent), "scene.directivity_exponent: must be >= 0");
  need((sensor_box.lo.array() <= sensor_box.hi.array()).all() && sensor_box.lo.allFinite() &&
           sensor_box.hi.allFinite(),
       "scene.sensor_box: lo must not exceed hi");
  need(rhs_center.allFinite() && feed_center.allFinite(), "scene: centers must be finite");

  need(finite(path_loss_db), "fading.path_loss_db: must be finite");
  need(reference_distance > 0.0 && finite(reference_distance), "fading.reference_distance: must be > 0");
  need(path_loss_exponent >= 0.0 && finite(path_loss_exponent), "fading.path_loss_exponent: must be >= 0");
  need(finite(rician_db_lo) && finite(rician_db_hi) && rician_db_lo <= rician_db_hi,
       "fading.rician_db_lo: must not exceed rician_db_hi");
  need(efficiency > 0.0 && efficiency <= 1.0, "fading.efficiency: must be in (0, 1]");

  need(pd >= 0.0 && pd <= 1.0, "sensing.pd: must be in [0, 1]");
  need(pf >= 0.0 && pf <= 1.0, "sensing.pf: must be in [0, 1]");
  need(pf <= pd, "sensing.pf: must not exceed sensing.pd");
  need(alpha > 0.0 && finite(alpha), "sensing.alpha: must be > 0");
  need(finite(noise_dbm), "sensing.noise_dbm: must be finite");
  need(!noise_watts || (*noise_watts > 0.0 && finite(*noise_watts)), "sensing.noise_watts: must be > 0");

  auto square_list = [&](const std::vector<std::size_t>& xs, const std::string& name) {
    need(!xs.empty(), name + ": must not be empty");
    for (auto m : xs) need(m >= 1 && is_square(m), name + ": " + std::to_string(m) + " is not a positive perfect square");
  };
  need(roc_num_rhs >= 1 && is_square(roc_num_rhs), "grids.roc_num_rhs: must be a positive perfect square");
  need(sweep_num_rhs >= 1 && is_square(sweep_num_rhs), "grids.sweep_num_rhs: must be a positive perfect square");
  need(power_num_rhs >= 1 && is_square(power_num_rhs), "power.num_rhs: must be a positive perfect square");
  square_list(m_list, "grids.m_list");
  need(roc_num_feeds >= 1, "grids.roc_num_feeds: must be >= 1");
  need(sweep_num_feeds >= 1, "grids.sweep_num_feeds: must be >= 1");
  need(power_num_feeds >= 1, "power.num_feeds: must be >= 1");
  need(!n_list.empty(), "grids.n_list: must not be empty");
  for (auto n : n_list) need(n >= 1, "grids.n_list: entries must be >= 1");
  need(!k_list.empty(), "grids.k_list: must not be empty");
  for (auto k : k_list) need(k >= 1 && k <= DecisionPmf::kMaxSensors, "grids.k_list: entries must be in [1, 20]");
  need(!bits_list.empty(), "grids.bits_list: must not be empty");
  for (auto b : bits_list) need(b >= 1 && b <= 16, "grids.bits_list: entries must be in [1, 16]");

  need(ao_max_iterations >= 1, "optimizer.max_iterations: must be >= 1");
  need(ao_tolerance >= 0.0 && finite(ao_tolerance), "optimizer.tolerance: must be >= 0");
  need(ao_mm_steps >= 1, "optimizer.mm_steps: must be >= 1");

  need(trials >= 1, "monte_carlo.trials: must be >= 1");
  need(realizations >= 1, "monte_carlo.realizations: must be >= 1");
  need(target_pfa > 0.0 && target_pfa < 1.0, "monte_carlo.target_pfa: must be in (0, 1)");
  need(trials == 0 || target_pfa * static_cast<double>(trials) >= 1.0,
       "monte_carlo.target_pfa: must be >= 1/trials");
  need(roc_grid_points >= 2, "monte_carlo.roc_grid_points: must be >= 2");

  for (auto [name, e] : {std::pair{"power.eps_tx_sensor", eps_tx_sensor}, {"power.eps_rhs", eps_rhs},
                         {"power.eps_rx_feed", eps_rx_feed}, {"power.eps_static", eps_static}}) {
    need(e >= 0.0 && finite(e), std::string(name) + ": must be >= 0");
  }
  need(threads >= 1, "threads: must be >= 1");
  return v;
}

// ---- scenario execution ---------------------------------------------------

namespace {

const char* const kSubstreamNotes[][2] = {
    {"scene", "sensor positions, index = realization"},
    {"rician", "Rician factors, index = realization"},
    {"channels", "parent of h_rhs / h_dig channel draws, index = realization"},
    {"ao_init", "AO starting phases, index = realization"},
    {"random_rhs", "random RHS baseline phases, index = realization"},
    {"mc", "Monte Carlo parent, index = realization; trials use (mc, hypothesis, trial)"},
};

struct Instance {
  ChannelSet channels;
  SensorStats stats;
  double noise_power = 0.0;
};

Instance make_instance(const ExperimentConfig& cfg, std::size_t K, std::size_t M, std::size_t N,
                       bool digital, std::size_t r) {
  const RandomStream master(cfg.seed);
  SceneConfig sc;
  sc.num_sensors = K;
  sc.num_rhs_elements = M;
  sc.num_feeds = N;
  sc.num_digital = digital ? cfg.num_digital : 0;
  sc.rhs_spacing = cfg.rhs_spacing;
  sc.feed_spacing = cfg.feed_spacing;
  sc.digital_spacing = cfg.digital_spacing;
  sc.sensor_box = cfg.sensor_box;
  sc.rhs_center = cfg.rhs_center;
  sc.feed_center = cfg.feed_center;
  sc.directivity_exponent = cfg.directivity_exponent;
  RandomStream scene_rng = master.substream("scene", r);
  const Scene scene = build_scene(sc, scene_rng);

  FadingParams fp;
  fp.mu = db_to_linear(cfg.path_loss_db);
  fp.d0 = cfg.reference_distance;
  fp.nu = cfg.path_loss_exponent;
  fp.efficiency = cfg.efficiency;
  RandomStream kappa_rng = master.substream("rician", r);
  fp.rician_factors = draw_rician_factors(K, cfg.rician_db_lo, cfg.rician_db_hi, kappa_rng);

  Instance inst;
  inst.channels = synthesize_channels(scene, fp, master.substream("channels", r));
  inst.stats = SensorStats::identical(K, cfg.pd, cfg.pf, cfg.alpha);
  inst.noise_power = cfg.noise_power();
  return inst;
}

// One evaluated rule in one realization.
struct Outcome {
  std::string rule;
  std::string rhs;
  unsigned bits = 0;
  double pd0 = 0.0;
  std::vector<double> grid_pd;  // only when a curve grid is requested
  std::size_t ao_iterations = 0;
  bool ao_ran = false;
  bool ao_converged = false;
};

struct Evaluator {
  const ExperimentConfig& cfg;
  const Instance& inst;
  RandomStream mc_rng;
  const std::vector<double>* grid;  // nullable

  Outcome evaluate(const std::string& rule_name, const std::string& rhs, const CMatrix& heff,
                   const FusionRule& rule) const {
    const DetectionSystem system{heff, inst.stats, inst.noise_power};
    const RocCurve curve = roc_monte_carlo(system, rule, cfg.trials, mc_rng);
    Outcome o;
    o.rule = rule_name;
    o.rhs = rhs;
    o.pd0 = detection_at_pfa(curve, cfg.target_pfa);
    if (grid != nullptr) o.grid_pd = detection_at_pfa(curve, *grid);
    return o;
  }
};

AoOptions ao_options(const ExperimentConfig& cfg) {
  AoOptions o;
  o.max_iterations = cfg.ao_max_iterations;
  o.relative_tolerance = cfg.ao_tolerance;
  o.mm_steps = cfg.ao_mm_steps;
  return o;
}

// Step A for a fixed RHS, with the same degenerate fallback as the AO loop.
FusionWeights weights_for(DesignKind kind, const CMatrix& heff, const SensorStats& stats, double noise) {
  const CVector target = kind == DesignKind::IS ? is_target(heff, stats) : fuc_target(heff, stats);
  if (!(target.norm() > 0.0)) {
    CVector e = CVector::Zero(heff.rows());
    e(0) = 1.0;
    return FusionWeights::from_half(e);
  }
  return optimal_weights(kind, heff, stats, noise);
}

std::string kind_name(DesignKind k) { return std::string(to_string(k)); }

struct Designed {
  DesignKind kind;
  AoResult ao;
};

std::vector<Designed> design_all(const ExperimentConfig& cfg, const Instance& inst, std::size_t r) {
  const RandomStream master(cfg.seed);
  RandomStream init_rng = master.substream("ao_init", r);
  const PhaseConfig init = PhaseConfig::uniform_random(inst.channels.num_rhs_elements(), init_rng);
  std::vector<Designed> out;
  for (DesignKind kind : kAllDesignKinds) {
    out.push_back({kind, ao_joint_design(kind, inst.channels, inst.stats, inst.noise_power, init, ao_options(cfg))});
  }
  return out;
}

Outcome with_ao(Outcome o, const AoResult& ao) {
  o.ao_ran = true;
  o.ao_iterations = ao.trace.iterations;
  o.ao_converged = ao.trace.termination == Termination::Converged;
  return o;
}

// A scenario point: one (K, M, N) setting, evaluated over all realizations.
struct Point {
  std::size_t K = 0;
  std::size_t M = 0;
  std::size_t N = 0;
  enum class Kind { RocDesign, Holographic, Digital, Quantization } kind = Kind::Holographic;
};

std::vector<Outcome> run_point(const ExperimentConfig& cfg, const Point& p, std::size_t r,
                               const std::vector<double>* grid) {
  const bool digital = p.kind == Point::Kind::Digital;
  const Instance inst = make_instance(cfg, p.K, p.M, p.N, digital, r);
  const RandomStream master(cfg.seed);
  const Evaluator ev{cfg, inst, master.substream("mc", r), grid};
  std::vector<Outcome> out;

  if (digital) {
    const CMatrix& hd = inst.channels.H_dig.value();
    for (DesignKind kind : kAllDesignKinds) {
      const auto w = weights_for(kind, hd, inst.stats, inst.noise_power);
      out.push_back(ev.evaluate(kind_name(kind), "digital", hd, FusionRule::widely_linear(w)));
    }
    return out;
  }

  const auto designs = design_all(cfg, inst, r);
  for (const auto& d : designs) {
    const CMatrix heff = effective_channel(inst.channels, d.ao.phases.theta());
    out.push_back(with_ao(ev.evaluate(kind_name(d.kind), "designed", heff, FusionRule::widely_linear(d.ao.weights)), d.ao));
  }

  if (p.kind == Point::Kind::RocDesign) {
    RandomStream rnd = master.substream("random_rhs", r);
    const PhaseConfig random_phases = PhaseConfig::uniform_random(p.M, rnd);
    const CMatrix heff_rnd = effective_channel(inst.channels, random_phases.theta());
    for (DesignKind kind : kAllDesignKinds) {
      const auto w = weights_for(kind, heff_rnd, inst.stats, inst.noise_power);
      out.push_back(ev.evaluate(kind_name(kind), "random", heff_rnd, FusionRule::widely_linear(w)));
    }
    out.push_back(ev.evaluate("LLR", "random", heff_rnd, FusionRule::llr()));
    for (const auto& d : designs) {
      const CMatrix heff = effective_channel(inst.channels, d.ao.phases.theta());
      out.push_back(ev.evaluate("LLR", "designed_" + kind_name(d.kind), heff, FusionRule::llr()));
    }
  }

  if (p.kind == Point::Kind::Quantization) {
    for (const auto& d : designs) {
      for (unsigned bits : cfg.bits_list) {
        const PhaseConfig q = quantize_phases(d.ao.phases, bits);
        const CMatrix heff = effective_channel(inst.channels, q.theta());
        const auto w = weights_for(d.kind, heff, inst.stats, inst.noise_power);
        Outcome o = ev.evaluate(kind_name(d.kind), "quantized", heff, FusionRule::widely_linear(w));
        o.bits = bits;
        out.push_back(with_ao(std::move(o), d.ao));
      }
    }
  }
  return out;
}

std::vector<double> pfa_grid(const ExperimentConfig& cfg) {
  const double lo = std::max(1e-3, 1.0 / static_cast<double>(cfg.trials));
  std::vector<double> g(cfg.roc_grid_points);
  const double span = std::log10(1.0 / lo);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = std::pow(10.0, std::log10(lo) + span * static_cast<double>(i) / static_cast<double>(g.size() - 1));
  }
  // Pin the endpoints; pow(10, log10(x)) can land just below x.
  g.front() = lo;
  g.back() = 1.0;
  return g;
}

std::string rows_csv(const std::vector<DetectionRow>& rows) {
  std::ostringstream s;
  s << "rule,rhs,K,M,N,bits,pd0,se_pd0,realizations,ao_iterations,ao_converged\n";
  for (const auto& r : rows) {
    s << r.rule << ',' << r.rhs << ',' << r.num_sensors << ',' << r.num_rhs << ',' << r.num_feeds << ','
      << r.bits << ',' << format_double(r.pd0) << ',' << format_double(r.se_pd0) << ',' << r.realizations
      << ',' << format_double(r.ao_iterations) << ',' << format_double(r.ao_converged) << '\n';
  }
  return s.str();
}

std::string curves_csv(const std::vector<AveragedCurve>& curves) {
  std::ostringstream s;
  s << "rule,rhs,gamma,pf0,pd0,se_pf0,se_pd0\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.pf0.size(); ++i) {
      // Vertically averaged curves have no single threshold and a fixed pf grid.
      s << c.rule << ',' << c.rhs << ",nan," << format_double(c.pf0[i]) << ',' << format_double(c.pd0[i])
        << ",0," << format_double(c.se_pd0[i]) << '\n';
    }
  }
  return s.str();
}

std::string power_csv(const ExperimentConfig& cfg, const std::vector<PowerRow>& rows) {
  std::ostringstream s;
  s << "K,M,N,N_dig,eps_tx_sensor,eps_rhs,eps_rx_feed,eps_static,holographic,digital,receive_ratio\n";
  for (const auto& r : rows) {
    s << cfg.num_sensors << ',' << r.num_rhs << ',' << r.num_feeds << ',' << cfg.num_digital << ','
      << format_double(cfg.eps_tx_sensor) << ',' << format_double(cfg.eps_rhs) << ','
      << format_double(cfg.eps_rx_feed) << ',' << format_double(cfg.eps_static) << ','
      << format_double(r.result.holographic) << ',' << format_double(r.result.digital) << ','
      << format_double(r.result.receive_ratio) << '\n';
  }
  return s.str();
}

json rows_json(const std::vector<DetectionRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"rule", r.rule}, {"rhs", r.rhs}, {"K", r.num_sensors}, {"M", r.num_rhs},
                   {"N", r.num_feeds}, {"bits", r.bits}, {"pd0", r.pd0}, {"se_pd0", r.se_pd0},
                   {"realizations", r.realizations}, {"ao_iterations", r.ao_iterations},
                   {"ao_converged", r.ao_converged}});
  }
  return out;
}

void run_power(const ExperimentConfig& cfg, ExperimentResult& res) {
  std::set<std::size_t> ms(cfg.m_list.begin(), cfg.m_list.end());
  ms.insert(cfg.power_num_rhs);
  std::set<std::size_t> ns(cfg.n_list.begin(), cfg.n_list.end());
  ns.insert(cfg.power_num_feeds);
  for (auto m : ms) {
    for (auto n : ns) {
      PowerModel pm;
      pm.eps_tx_sensor = cfg.eps_tx_sensor;
      pm.eps_rhs = cfg.eps_rhs;
      pm.eps_rx_feed = cfg.eps_rx_feed;
      pm.eps_static = cfg.eps_static;
      pm.num_sensors = cfg.num_sensors;
      pm.num_rhs_elements = m;
      pm.num_feeds = n;
      pm.num_digital = cfg.num_digital;
      pm.alpha = RVector::Constant(static_cast<Eigen::Index>(cfg.num_sensors), cfg.alpha);
      res.power.push_back({m, n, power_comparison(pm)});
    }
  }
}

void run_detection(const ExperimentConfig& cfg, ExperimentResult& res) {
  std::vector<Point> points;
  using K = Point::Kind;
  if (cfg.scenario == "roc_design") {
    points.push_back({cfg.num_sensors, cfg.roc_num_rhs, cfg.roc_num_feeds, K::RocDesign});
  } else if (cfg.scenario == "pd_vs_M") {
    for (auto n : cfg.n_list) {
      for (auto m : cfg.m_list) points.push_back({cfg.num_sensors, m, n, K::Holographic});
    }
    // The baseline only needs the sensor-side draws; M and N are placeholders.
    points.push_back({cfg.num_sensors, cfg.m_list.front(), 1, K::Digital});
  } else if (cfg.scenario == "pd_vs_K") {
    for (auto k : cfg.k_list) points.push_back({k, cfg.sweep_num_rhs, cfg.sweep_num_feeds, K::Holographic});
  } else {
    points.push_back({cfg.num_sensors, cfg.sweep_num_rhs, cfg.sweep_num_feeds, K::Quantization});
  }

  const std::vector<double> grid = pfa_grid(cfg);
  const bool want_curves = cfg.scenario == "roc_design";
  const std::size_t S = cfg.realizations;
  std::vector<std::vector<Outcome>> outcomes(points.size() * S);
  parallel_for(outcomes.size(), cfg.threads, [&](std::size_t i) {
    outcomes[i] = run_point(cfg, points[i / S], i % S, want_curves ? &grid : nullptr);
  });

  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const Point& p = points[pi];
    const auto& first = outcomes[pi * S];
    for (std::size_t j = 0; j < first.size(); ++j) {
      std::vector<double> pds;
      double iters = 0.0;
      double conv = 0.0;
      for (std::size_t r = 0; r < S; ++r) {
        const Outcome& o = outcomes[pi * S + r].at(j);
        pds.push_back(o.pd0);
        iters += static_cast<double>(o.ao_iterations);
        conv += o.ao_converged ? 1.0 : 0.0;
      }
      const AveragedDetection avg = average_detection(pds);
      DetectionRow row;
      row.rule = first[j].rule;
      row.rhs = first[j].rhs;
      row.num_sensors = p.K;
      row.num_rhs = p.kind == K::Digital ? 0 : p.M;
      row.num_feeds = p.kind == K::Digital ? cfg.num_digital : p.N;
      row.bits = first[j].bits;
      row.pd0 = avg.mean;
      row.se_pd0 = avg.standard_error;
      row.realizations = S;
      if (first[j].ao_ran) {
        row.ao_iterations = iters / static_cast<double>(S);
        row.ao_converged = conv / static_cast<double>(S);
      }
      res.rows.push_back(row);

      if (want_curves) {
        AveragedCurve c{row.rule, row.rhs, grid, {}, {}};
        for (std::size_t g = 0; g < grid.size(); ++g) {
          std::vector<double> col;
          for (std::size_t r = 0; r < S; ++r) col.push_back(outcomes[pi * S + r][j].grid_pd[g]);
          const AveragedDetection a = average_detection(col);
          c.pd0.push_back(a.mean);
          c.se_pd0.push_back(a.standard_error);
        }
        res.curves.push_back(std::move(c));
      }
    }
    if (cfg.scenario == "pd_vs_K") {
      DetectionRow b;
      b.rule = "observation_bound";
      b.rhs = "ideal";
      b.num_sensors = p.K;
      b.pd0 = observation_bound_at_pfa(p.K, cfg.pd, cfg.pf, cfg.target_pfa);
      res.rows.push_back(b);
    }
  }
}

}  // namespace

const DetectionRow& ExperimentResult::find(const std::string& rule, const std::string& rhs,
                                           std::size_t num_rhs, std::size_t num_feeds, unsigned bits,
                                           std::size_t num_sensors) const {
  for (const auto& r : rows) {
    if (r.rule == rule && r.rhs == rhs && r.num_rhs == num_rhs && r.num_feeds == num_feeds &&
        r.bits == bits && (num_sensors == 0 || r.num_sensors == num_sensors)) {
      return r;
    }
  }
  throw std::out_of_range("ExperimentResult::find: no row for " + rule + "/" + rhs);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto violations = config.validate();
  if (!violations.empty()) {
    std::string msg = "invalid config:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }

  ExperimentResult res;
  try {
    if (config.scenario == "power_table") {
      run_power(config, res);
    } else {
      run_detection(config, res);
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("scenario " + config.scenario + ": " + e.what());
  }

  json meta = {{"version", kVersion},
               {"scenario", config.scenario},
               {"config_hash", hex64(config.hash())},
               {"master_seed", config.seed},
               {"config", config_json(config)}};
  json streams = json::object();
  for (const auto& s : kSubstreamNotes) streams[s[0]] = s[1];
  meta["substreams"] = streams;

  const std::string& id = config.scenario;
  if (id == "power_table") {
    json rows = json::array();
    for (const auto& r : res.power) {
      rows.push_back({{"M", r.num_rhs}, {"N", r.num_feeds}, {"holographic", r.result.holographic},
                      {"digital", r.result.digital}, {"receive_ratio", r.result.receive_ratio}});
    }
    meta["results"] = rows;
    res.artifacts.push_back({id + ".csv", power_csv(config, res.power)});
  } else {
    meta["results"] = rows_json(res.rows);
    res.artifacts.push_back({id + ".csv", rows_csv(res.rows)});
    if (!res.curves.empty()) res.artifacts.push_back({id + "_roc.csv", curves_csv(res.curves)});
  }
  res.artifacts.push_back({id + ".json", meta.dump(2) + "\n"});
  return res;
}

void write_artifacts(const ExperimentResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  for (const auto& a : result.artifacts) {
    const fs::path path = fs::path(dir) / a.name;
    std::ofstream out(path, std::ios::binary);
    out << a.content;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
}

}  // namespace holofuse
