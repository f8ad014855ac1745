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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string_view>

namespace holofuse {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Point3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// All lengths are expressed in wavelengths, so lambda is 1 throughout.
inline constexpr double kWavelength = 1.0;

enum class Hypothesis { H0 = 0, H1 = 1 };

// FuC0 / FuC1 condition the deflection denominator on H0 / H1; IS assumes
// ideal local sensing at design time.
enum class DesignKind { FuC0, FuC1, IS };

inline constexpr DesignKind kAllDesignKinds[] = {DesignKind::FuC0, DesignKind::FuC1, DesignKind::IS};

constexpr std::string_view to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::FuC0: return "FuC-0";
    case DesignKind::FuC1: return "FuC-1";
    case DesignKind::IS: return "IS";
  }
  return "?";
}

constexpr std::string_view to_string(Hypothesis h) { return h == Hypothesis::H1 ? "H1" : "H0"; }

// Hypothesis whose conditional covariance enters a FuC deflection denominator.
constexpr Hypothesis conditioning_hypothesis(DesignKind kind) {
  return kind == DesignKind::FuC0 ? Hypothesis::H0 : Hypothesis::H1;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace holofuse
