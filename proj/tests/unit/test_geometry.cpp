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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace holofuse;
using Catch::Approx;

namespace {

Scene default_scene(std::size_t M = 64, std::size_t N = 1, std::uint64_t seed = 1) {
  SceneConfig c;
  c.num_rhs_elements = M;
  c.num_feeds = N;
  RandomStream rng(seed);
  return build_scene(c, rng);
}

}  // namespace

TEST_CASE("rhs frame faces the sensor box", "[geometry]") {
  const PlanarFrame f = make_planar_frame(Point3(-1, 0, 0));
  CHECK(f.boresight.isApprox(Point3(-1, 0, 0)));
  CHECK(f.horizontal.isApprox(Point3(0, 1, 0)));
  CHECK(f.vertical.isApprox(Point3(0, 0, 1)));
  const PlanarFrame up = make_planar_frame(Point3(0, 0, 1));
  CHECK(std::abs(up.horizontal.dot(up.boresight)) < 1e-15);
  CHECK(up.vertical.norm() == Approx(1.0));
}

TEST_CASE("single-element surface sits at the centre", "[geometry]") {
  const Scene s = default_scene(1);
  REQUIRE(s.num_rhs_elements() == 1);
  CHECK((s.rhs_element_positions[0] - Point3(70, 20, 10)).norm() == 0.0);
}

TEST_CASE("2x2 grid has lambda/3 neighbours and the right centroid", "[geometry]") {
  const Scene s = default_scene(4);
  Point3 centroid = Point3::Zero();
  for (const auto& p : s.rhs_element_positions) centroid += p / 4.0;
  CHECK((centroid - Point3(70, 20, 10)).norm() < 1e-12);
  for (std::size_t i = 0; i < 4; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) nearest = std::min(nearest, (s.rhs_element_positions[i] - s.rhs_element_positions[j]).norm());
    }
    CHECK(nearest == Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(s.rhs_element_positions[i].x() == Approx(70.0));
  }
  // Horizontal index runs fastest.
  CHECK((s.rhs_element_positions[1] - s.rhs_element_positions[0]).normalized().isApprox(s.rhs_frame.horizontal));
  CHECK((s.rhs_element_positions[2] - s.rhs_element_positions[0]).normalized().isApprox(s.rhs_frame.vertical));
}

TEST_CASE("feed centre to surface centre is sqrt(8) wavelengths", "[geometry]") {
  const Scene s = default_scene();
  CHECK((s.rhs_center - s.feed_center).norm() == Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(std::round(10.0 * (s.rhs_center - s.feed_center).norm()) == 28.0);
}

TEST_CASE("feeds lie on the x-axis line and look at the surface centre", "[geometry]") {
  const Scene s = default_scene(64, 3);
  REQUIRE(s.num_feeds() == 3);
  CHECK((s.feed_positions[1] - s.feed_positions[0]).isApprox(Point3(0.5, 0, 0)));
  CHECK((s.feed_positions[1] - Point3(68, 18, 10)).norm() < 1e-12);
  for (std::size_t n = 0; n < 3; ++n) {
    CHECK(s.feed_boresights[n].norm() == Approx(1.0).epsilon(1e-14));
    CHECK(s.feed_boresights[n].isApprox((s.rhs_center - s.feed_positions[n]).normalized()));
  }
}

TEST_CASE("sensors fall inside the box and digital grid shares the surface plane", "[geometry]") {
  const Scene s = default_scene();
  for (const auto& p : s.sensor_positions) {
    CHECK(p.x() >= 0.0);
    CHECK(p.x() <= 40.0);
    CHECK(p.y() >= 0.0);
    CHECK(p.y() <= 40.0);
    CHECK(p.z() >= 0.0);
    CHECK(p.z() <= 3.0);
  }
  REQUIRE(s.num_digital() == 100);
  Point3 c = Point3::Zero();
  for (const auto& p : s.digital_array_positions) {
    CHECK(p.x() == Approx(70.0));
    c += p / 100.0;
  }
  CHECK((c - s.rhs_center).norm() < 1e-12);
  CHECK((s.digital_array_positions[1] - s.digital_array_positions[0]).norm() == Approx(0.5));
}

TEST_CASE("build_scene is reproducible for a fixed seed", "[geometry]") {
  const Scene a = default_scene(64, 1, 77);
  const Scene b = default_scene(64, 1, 77);
  const Scene c = default_scene(64, 1, 78);
  CHECK(a.sensor_positions == b.sensor_positions);
  CHECK(a.rhs_element_positions == b.rhs_element_positions);
  CHECK(a.sensor_positions != c.sensor_positions);
}

TEST_CASE("build_scene rejects bad configurations", "[geometry]") {
  RandomStream rng(1);
  SceneConfig c;
  c.num_rhs_elements = 10;
  CHECK_THROWS_AS(build_scene(c, rng), std::invalid_argument);
  c = SceneConfig{};
  c.num_digital = 50;
  CHECK_THROWS_AS(build_scene(c, rng), std::invalid_argument);
  c = SceneConfig{};
  c.rhs_spacing = 0.0;
  CHECK_THROWS_AS(build_scene(c, rng), std::invalid_argument);
  c = SceneConfig{};
  c.feed_spacing = -1.0;
  CHECK_THROWS_AS(build_scene(c, rng), std::invalid_argument);
  c = SceneConfig{};
  c.sensor_box.hi = Point3(-1, 40, 3);
  CHECK_THROWS_AS(build_scene(c, rng), std::invalid_argument);
}

TEST_CASE("far-field boundary values", "[geometry]") {
  CHECK(fraunhofer_distance(100, 2, 1.0 / 3.0, 0.5) == Approx(200.0 / 9.0).epsilon(1e-12));
  CHECK(fraunhofer_distance(100, 2, 1.0 / 3.0, 0.5) == Approx(22.0).epsilon(0.02));
  CHECK(fraunhofer_distance(25, 2, 1.0 / 3.0, 0.5) == Approx(50.0 / 9.0).epsilon(1e-12));
  CHECK(fraunhofer_distance(25, 2, 1.0 / 3.0, 0.5) == Approx(5.5).epsilon(0.02));
  CHECK(fraunhofer_distance(1, 1, 0.5, 0.5) == Approx(0.5));
}

TEST_CASE("far-field boundary is monotone and the default scene is near-field", "[geometry]") {
  double prev = 0.0;
  for (std::size_t side = 1; side <= 15; ++side) {
    const double d = fraunhofer_distance(side * side, 2, 1.0 / 3.0, 0.5);
    CHECK(d >= prev);
    prev = d;
  }
  CHECK(fraunhofer_distance(64, 3, 1.0 / 3.0, 0.5) >= fraunhofer_distance(64, 2, 1.0 / 3.0, 0.5));
  CHECK(fraunhofer_distance(64, 2, 0.4, 0.5) >= fraunhofer_distance(64, 2, 1.0 / 3.0, 0.5));
  CHECK(fraunhofer_distance(4, 2, 1.0 / 3.0, 0.6) >= fraunhofer_distance(4, 2, 1.0 / 3.0, 0.5));
  const double sep = std::sqrt(8.0);
  for (std::size_t M : {25, 36, 49, 64, 100, 144}) {
    for (std::size_t N : {1, 2}) CHECK(sep < fraunhofer_distance(M, N, 1.0 / 3.0, 0.5));
  }
}

TEST_CASE("arrival angles in the surface frame", "[geometry]") {
  const Point3 centre(70, 20, 10);
  const PlanarFrame f = make_planar_frame(Point3(-1, 0, 0));
  const ArrivalAngles on_axis = arrival_angles(Point3(0, 20, 10), centre, f);
  CHECK(on_axis.polar == Approx(0.0).margin(1e-12));
  CHECK(on_axis.in_front);
  const ArrivalAngles grazing = arrival_angles(Point3(70, 50, 10), centre, f);
  CHECK(grazing.polar == Approx(kPi / 2).margin(1e-12));
  CHECK(grazing.azimuth == Approx(0.0).margin(1e-12));
  const ArrivalAngles up = arrival_angles(Point3(70, 20, 30), centre, f);
  CHECK(up.azimuth == Approx(kPi / 2).margin(1e-12));
  const ArrivalAngles behind = arrival_angles(Point3(80, 20, 10), centre, f);
  CHECK_FALSE(behind.in_front);
  // 45 degrees off boresight toward +y.
  const ArrivalAngles oblique = arrival_angles(Point3(60, 30, 10), centre, f);
  CHECK(oblique.polar == Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("arrival angles for scene sensors are in front", "[geometry]") {
  const Scene s = default_scene();
  for (std::size_t k = 0; k < s.num_sensors(); ++k) {
    const auto a = arrival_angles(s, k);
    CHECK(a.in_front);
    CHECK(a.polar >= 0.0);
    CHECK(a.polar < kPi / 2);
  }
}
