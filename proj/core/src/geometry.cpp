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

#include "holofuse/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace holofuse {
namespace {

std::size_t exact_sqrt(std::size_t n, const char* what) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (side * side != n) {
    throw std::invalid_argument(std::string(what) + " must be a perfect square, got " +
                                std::to_string(n));
  }
  return side;
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

Point3 unit(const Point3& v, const char* what) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument(std::string(what) + " must be a nonzero finite vector");
  }
  return v / n;
}

}  // namespace

PlanarFrame make_planar_frame(const Point3& boresight) {
  PlanarFrame f;
  f.boresight = unit(boresight, "boresight");
  Point3 h = f.boresight.cross(Point3::UnitZ());
  if (h.norm() < 1e-12) h = f.boresight.cross(Point3::UnitX());
  f.horizontal = h.normalized();
  f.vertical = f.horizontal.cross(f.boresight).normalized();
  return f;
}

std::vector<Point3> planar_grid(std::size_t count, double spacing, const Point3& center,
                                const PlanarFrame& frame) {
  const std::size_t side = exact_sqrt(count, "grid size");
  const double offset = 0.5 * static_cast<double>(side - 1);
  std::vector<Point3> points;
  points.reserve(count);
  for (std::size_t iv = 0; iv < side; ++iv) {
    for (std::size_t ih = 0; ih < side; ++ih) {
      points.push_back(center + (static_cast<double>(ih) - offset) * spacing * frame.horizontal +
                       (static_cast<double>(iv) - offset) * spacing * frame.vertical);
    }
  }
  return points;
}

Scene build_scene(const SceneConfig& config, RandomStream& rng) {
  if (config.num_sensors == 0) throw std::invalid_argument("num_sensors must be >= 1");
  if (config.num_rhs_elements == 0) throw std::invalid_argument("num_rhs_elements must be >= 1");
  if (config.num_feeds == 0) throw std::invalid_argument("num_feeds must be >= 1");
  require_positive(config.rhs_spacing, "rhs_spacing");
  require_positive(config.feed_spacing, "feed_spacing");
  if (config.num_digital > 0) require_positive(config.digital_spacing, "digital_spacing");
  if (config.directivity_exponent < 0.0 || !std::isfinite(config.directivity_exponent)) {
    throw std::invalid_argument("directivity_exponent must be >= 0");
  }
  const Box& box = config.sensor_box;
  for (int d = 0; d < 3; ++d) {
    if (!std::isfinite(box.lo[d]) || !std::isfinite(box.hi[d]) || box.lo[d] > box.hi[d]) {
      throw std::invalid_argument("sensor box bounds must be finite with lo <= hi");
    }
  }
  if ((box.hi - box.lo).maxCoeff() <= 0.0) {
    throw std::invalid_argument("sensor box is degenerate (zero extent)");
  }

  Scene s;
  s.rhs_spacing = config.rhs_spacing;
  s.feed_spacing = config.feed_spacing;
  s.digital_spacing = config.digital_spacing;
  s.directivity_exponent = config.directivity_exponent;

  s.sensor_positions.reserve(config.num_sensors);
  for (std::size_t k = 0; k < config.num_sensors; ++k) {
    Point3 p;
    for (int d = 0; d < 3; ++d) p[d] = rng.uniform(box.lo[d], box.hi[d]);
    s.sensor_positions.push_back(p);
  }

  s.rhs_center = config.rhs_center;
  s.rhs_frame = make_planar_frame(config.rhs_boresight);
  s.rhs_side = exact_sqrt(config.num_rhs_elements, "num_rhs_elements");
  s.rhs_element_positions =
      planar_grid(config.num_rhs_elements, config.rhs_spacing, s.rhs_center, s.rhs_frame);

  s.feed_center = config.feed_center;
  s.feed_axis = unit(config.feed_axis, "feed_axis");
  const double feed_offset = 0.5 * static_cast<double>(config.num_feeds - 1);
  for (std::size_t n = 0; n < config.num_feeds; ++n) {
    const Point3 p =
        s.feed_center + (static_cast<double>(n) - feed_offset) * config.feed_spacing * s.feed_axis;
    s.feed_positions.push_back(p);
    s.feed_boresights.push_back(unit(s.rhs_center - p, "feed-to-RHS direction"));
  }

  if (config.num_digital > 0) {
    s.digital_side = exact_sqrt(config.num_digital, "num_digital");
    s.digital_array_positions =
        planar_grid(config.num_digital, config.digital_spacing, s.rhs_center, s.rhs_frame);
  }
  return s;
}

double fraunhofer_distance(std::size_t num_rhs_elements, std::size_t num_feeds, double rhs_spacing,
                           double feed_spacing) {
  if (num_rhs_elements == 0 || num_feeds == 0) {
    throw std::invalid_argument("fraunhofer_distance: element counts must be >= 1");
  }
  require_positive(rhs_spacing, "rhs_spacing");
  require_positive(feed_spacing, "feed_spacing");
  const double rhs_aperture = std::sqrt(static_cast<double>(num_rhs_elements)) * rhs_spacing;
  const double feed_aperture = static_cast<double>(num_feeds) * feed_spacing;
  return (2.0 / kWavelength) *
         std::max(rhs_aperture * rhs_aperture, feed_aperture * feed_aperture);
}

ArrivalAngles arrival_angles(const Point3& source, const Point3& aperture_center,
                             const PlanarFrame& frame) {
  const Point3 d = source - aperture_center;
  const double r = d.norm();
  if (!(r > 0.0)) throw std::invalid_argument("arrival_angles: source coincides with aperture");
  const Point3 u = d / r;
  const double c = std::clamp(u.dot(frame.boresight), -1.0, 1.0);
  ArrivalAngles a;
  a.polar = std::acos(c);
  a.azimuth = std::atan2(u.dot(frame.vertical), u.dot(frame.horizontal));
  if (a.azimuth < 0.0) a.azimuth += kTwoPi;
  a.in_front = c >= 0.0;
  return a;
}

ArrivalAngles arrival_angles(const Scene& scene, std::size_t sensor_index) {
  if (sensor_index >= scene.num_sensors()) throw std::out_of_range("sensor index out of range");
  return arrival_angles(scene.sensor_positions[sensor_index], scene.rhs_center, scene.rhs_frame);
}

}  // namespace holofuse
