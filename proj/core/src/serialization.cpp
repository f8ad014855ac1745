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

#include "holofuse/serialization.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace holofuse {

using nlohmann::json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

namespace {

json point_json(const Point3& p) { return json::array({p.x(), p.y(), p.z()}); }

json points_json(const std::vector<Point3>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(point_json(p));
  return out;
}

json matrix_json(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (rows < 0 || cols < 0 || re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size()) {
    throw std::invalid_argument("channels_from_json: entry count does not match dimensions");
  }
  CMatrix m(rows, cols);
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++i) m(r, c) = Complex(re[i].get<double>(), im[i].get<double>());
  }
  return m;
}

}  // namespace

std::string scene_to_json(const Scene& scene) {
  const json j = {
      {"sensor_positions", points_json(scene.sensor_positions)},
      {"rhs_element_positions", points_json(scene.rhs_element_positions)},
      {"rhs_center", point_json(scene.rhs_center)},
      {"rhs_frame",
       {{"boresight", point_json(scene.rhs_frame.boresight)},
        {"horizontal", point_json(scene.rhs_frame.horizontal)},
        {"vertical", point_json(scene.rhs_frame.vertical)}}},
      {"rhs_side", scene.rhs_side},
      {"feed_positions", points_json(scene.feed_positions)},
      {"feed_boresights", points_json(scene.feed_boresights)},
      {"feed_center", point_json(scene.feed_center)},
      {"feed_axis", point_json(scene.feed_axis)},
      {"digital_array_positions", points_json(scene.digital_array_positions)},
      {"digital_side", scene.digital_side},
      {"rhs_spacing", scene.rhs_spacing},
      {"feed_spacing", scene.feed_spacing},
      {"digital_spacing", scene.digital_spacing},
      {"directivity_exponent", scene.directivity_exponent},
  };
  return j.dump(2);
}

std::string channels_to_json(const ChannelSet& channels) {
  json j = {{"H", matrix_json(channels.H)},
            {"G", matrix_json(channels.G)},
            {"blocked_sensors", channels.blocked_sensors}};
  j["H_dig"] = channels.H_dig ? matrix_json(*channels.H_dig) : json(nullptr);
  return j.dump();
}

ChannelSet channels_from_json(const std::string& text) {
  const json j = json::parse(text);
  ChannelSet out;
  out.H = matrix_from_json(j.at("H"));
  out.G = matrix_from_json(j.at("G"));
  if (j.contains("H_dig") && !j.at("H_dig").is_null()) out.H_dig = matrix_from_json(j.at("H_dig"));
  out.blocked_sensors = j.value("blocked_sensors", std::vector<std::size_t>{});
  return out;
}

std::string ao_trace_to_json(const AoTrace& trace) {
  json records = json::array();
  for (std::size_t i = 0; i < trace.objective.size(); ++i) {
    records.push_back({{"iteration", i},
                       {"objective", trace.objective[i]},
                       {"elapsed_seconds", i < trace.elapsed_seconds.size() ? trace.elapsed_seconds[i] : 0.0}});
  }
  return json{{"iterations", trace.iterations},
              {"termination", std::string(to_string(trace.termination))},
              {"records", records}}
      .dump(2);
}

std::string roc_to_csv(const RocCurve& curve) {
  std::ostringstream out;
  out << "gamma,pf0,pd0,se_pf0,se_pd0\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    out << format_double(p.gamma) << ',' << format_double(p.pf0) << ',' << format_double(p.pd0) << ','
        << format_double(curve.se_pf0(i)) << ',' << format_double(curve.se_pd0(i)) << '\n';
  }
  return out.str();
}

}  // namespace holofuse
