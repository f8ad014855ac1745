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

#include "holofuse/random.hpp"
#include "holofuse/types.hpp"

#include <cstddef>
#include <vector>

namespace holofuse {

struct Box {
  Point3 lo{0.0, 0.0, 0.0};
  Point3 hi{40.0, 40.0, 3.0};
};

struct SceneConfig {
  std::size_t num_sensors = 10;
  std::size_t num_rhs_elements = 64;  // must be a perfect square
  std::size_t num_feeds = 1;
  std::size_t num_digital = 100;  // baseline array size, perfect square; 0 disables it

  double rhs_spacing = 1.0 / 3.0;
  double feed_spacing = 0.5;
  double digital_spacing = 0.5;

  Box sensor_box{};
  Point3 rhs_center{70.0, 20.0, 10.0};
  Point3 rhs_boresight{-1.0, 0.0, 0.0};
  Point3 feed_center{68.0, 18.0, 10.0};
  Point3 feed_axis{1.0, 0.0, 0.0};

  double directivity_exponent = 1.5;
};

// Local frame of a planar aperture. `horizontal` and `vertical` span the plane;
// `boresight` is the outward normal (maximum-gain direction).
struct PlanarFrame {
  Point3 boresight;
  Point3 horizontal;
  Point3 vertical;
};

// Orthonormal frame for a plane with the given normal. The horizontal axis is
// boresight x world-z (world-x when the boresight is vertical).
PlanarFrame make_planar_frame(const Point3& boresight);

// Immutable description of where everything sits, in wavelengths.
struct Scene {
  std::vector<Point3> sensor_positions;
  std::vector<Point3> rhs_element_positions;  // row-major, horizontal index fastest
  Point3 rhs_center;
  PlanarFrame rhs_frame;
  std::size_t rhs_side = 0;  // sqrt(M)

  std::vector<Point3> feed_positions;
  std::vector<Point3> feed_boresights;  // unit vectors toward rhs_center
  Point3 feed_center;
  Point3 feed_axis;

  std::vector<Point3> digital_array_positions;  // same center and plane as the RHS
  std::size_t digital_side = 0;

  double rhs_spacing = 1.0 / 3.0;
  double feed_spacing = 0.5;
  double digital_spacing = 0.5;
  double directivity_exponent = 1.5;

  [[nodiscard]] std::size_t num_sensors() const { return sensor_positions.size(); }
  [[nodiscard]] std::size_t num_rhs_elements() const { return rhs_element_positions.size(); }
  [[nodiscard]] std::size_t num_feeds() const { return feed_positions.size(); }
  [[nodiscard]] std::size_t num_digital() const { return digital_array_positions.size(); }
};

// Throws std::invalid_argument on a non-square M or N_dig, non-positive
// spacing, or a degenerate sensor box.
Scene build_scene(const SceneConfig& config, RandomStream& rng);

// Square planar grid of `count` points centred at `center` in the plane of `frame`.
std::vector<Point3> planar_grid(std::size_t count, double spacing, const Point3& center,
                                const PlanarFrame& frame);

// Far-field boundary (2/lambda) max{(sqrt(M) d_rhs)^2, (N d_fc)^2}, in wavelengths.
double fraunhofer_distance(std::size_t num_rhs_elements, std::size_t num_feeds, double rhs_spacing,
                           double feed_spacing);

// Direction of arrival in an aperture's local frame. `polar` is measured from
// boresight (0 on axis, pi/2 grazing); `azimuth` is the in-plane angle from
// the horizontal axis toward the vertical one.
struct ArrivalAngles {
  double polar = 0.0;
  double azimuth = 0.0;
  bool in_front = true;  // false when the source lies behind the aperture plane
};

ArrivalAngles arrival_angles(const Point3& source, const Point3& aperture_center,
                             const PlanarFrame& frame);
ArrivalAngles arrival_angles(const Scene& scene, std::size_t sensor_index);

}  // namespace holofuse
