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

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace holofuse;
using Catch::Approx;

TEST_CASE("decision pmf tables are validated", "[sensing]") {
  CHECK_NOTHROW(DecisionPmf(2, {0.1, 0.2, 0.3, 0.4}));
  CHECK_THROWS_AS(DecisionPmf(2, {0.1, 0.2, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(DecisionPmf(2, {0.1, 0.2, 0.3, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DecisionPmf(2, {-0.1, 0.4, 0.3, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(DecisionPmf(0, {1.0}), std::invalid_argument);
  CHECK_NOTHROW(DecisionPmf(1, {0.5, 0.5 + 5e-10}));
}

TEST_CASE("independent pmf reproduces its marginals and is uncorrelated", "[sensing]") {
  RVector p(3);
  p << 0.2, 0.7, 0.5;
  const DecisionPmf pmf = DecisionPmf::independent(p);
  CHECK((pmf.prob_plus() - p).norm() < 1e-14);
  CHECK((pmf.mean() - (2.0 * p.array() - 1.0).matrix()).norm() < 1e-14);
  const RMatrix c = pmf.covariance();
  for (int i = 0; i < 3; ++i) {
    CHECK(c(i, i) == Approx(4.0 * p(i) * (1.0 - p(i))));
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(std::abs(c(i, j)) < 1e-14);
    }
  }
  // Bit k of the index set means x_k = +1.
  CHECK(pmf.probability(0b101) == Approx(0.2 * 0.3 * 0.5));
  const RVector x = decision_vector(0b101, 3);
  CHECK(x(0) == 1.0);
  CHECK(x(1) == -1.0);
  CHECK(x(2) == 1.0);
}

TEST_CASE("identical sensors have the simplified moments", "[sensing]") {
  const SensorStats s = SensorStats::identical(4, 0.5, 0.05);
  CHECK(s.iid);
  CHECK((s.rho1 - RVector::Constant(4, 0.5)).norm() == 0.0);
  CHECK((s.cov_h1 - RMatrix::Identity(4, 4)).norm() < 1e-15);
  CHECK((s.cov_h0 - 4.0 * 0.05 * 0.95 * RMatrix::Identity(4, 4)).norm() < 1e-15);
  CHECK((s.cov_h1 - s.pmf(Hypothesis::H1).covariance()).norm() < 1e-12);
  CHECK((s.rho10() - RVector::Constant(4, 0.45)).norm() < 1e-15);
}

TEST_CASE("sensor statistics are validated", "[sensing]") {
  CHECK_THROWS_AS(SensorStats::identical(3, 0.05, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(SensorStats::identical(3, 1.2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(SensorStats::identical(3, 0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(SensorStats::identical(3, 0.5, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SensorStats::independent(RVector::Ones(2), RVector::Zero(3), RVector::Ones(2)),
                  std::invalid_argument);
}

TEST_CASE("joint pmf statistics come from the tables", "[sensing]") {
  // Two perfectly correlated sensors.
  const DecisionPmf h1(2, {0.3, 0.0, 0.0, 0.7});
  const DecisionPmf h0(2, {0.9, 0.0, 0.0, 0.1});
  const SensorStats s = SensorStats::from_joint(h1, h0, RVector::Ones(2));
  CHECK(s.rho1(0) == Approx(0.7));
  CHECK(s.rho0(1) == Approx(0.1));
  CHECK(s.cov_h1(0, 1) == Approx(s.cov_h1(0, 0)));
  RandomStream rng(3);
  for (int i = 0; i < 200; ++i) {
    const RVector x = sample_decisions(s, Hypothesis::H1, rng);
    CHECK(x(0) == x(1));
  }
}

TEST_CASE("degenerate operating points give deterministic decisions", "[sensing]") {
  const SensorStats s = SensorStats::ideal(RVector::Ones(5));
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_decisions(s, Hypothesis::H1, rng) == RVector::Ones(5));
    CHECK(sample_decisions(s, Hypothesis::H0, rng) == RVector::Constant(5, -1.0));
  }
}

TEST_CASE("sampled decisions have the right mean", "[sensing]") {
  const SensorStats s = SensorStats::identical(3, 0.5, 0.05);
  RandomStream rng(2);
  RVector acc1 = RVector::Zero(3), acc0 = RVector::Zero(3);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    acc1 += sample_decisions(s, Hypothesis::H1, rng);
    acc0 += sample_decisions(s, Hypothesis::H0, rng);
  }
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(acc1(k) / n) < 0.01);
    CHECK(acc0(k) / n == Approx(-0.9).margin(0.01));
  }
  RandomStream bad(1);
  SensorStats broken = s;
  broken.rho1(0) = 1.5;
  CHECK_THROWS_AS(sample_decisions(broken, Hypothesis::H1, bad), std::invalid_argument);
}

TEST_CASE("noiseless received signal is exact", "[sensing]") {
  const auto inst = oracle::random_instance(3, 4, 2, 5);
  const CMatrix he = inst.heff();
  RandomStream rng(1);
  const CVector y = received_signal(he, inst.stats, RVector::Ones(3), 0.0, rng);
  CHECK((y - he * inst.stats.alpha.cast<Complex>()).norm() < 1e-12);

  CMatrix h(1, 1);
  h(0, 0) = 1.0;
  const SensorStats one = SensorStats::identical(1, 0.5, 0.1);
  const CVector y1 = received_signal(h, one, RVector::Constant(1, -1.0), 0.0, rng);
  CHECK(y1(0) == Complex(-1.0));
  CHECK_THROWS_AS(received_signal(h, one, RVector::Ones(1), -1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(received_signal(h, one, RVector::Ones(2), 1.0, rng), std::invalid_argument);
}

TEST_CASE("pure noise has covariance sigma^2 I", "[sensing]") {
  const SensorStats s = SensorStats::identical(2, 0.5, 0.1);
  const CMatrix zero = CMatrix::Zero(3, 2);
  RandomStream rng(4);
  const int n = 100000;
  CMatrix acc = CMatrix::Zero(3, 3);
  for (int i = 0; i < n; ++i) {
    const CVector y = received_signal(zero, s, RVector::Ones(2), 0.7, rng);
    acc += y * y.adjoint();
  }
  acc /= n;
  for (int i = 0; i < 3; ++i) {
    CHECK(acc(i, i).real() == Approx(0.7).epsilon(0.02));
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(std::abs(acc(i, j)) < 0.02 * 0.7);
    }
  }
}

TEST_CASE("perfect sensing moments", "[sensing]") {
  const auto inst = oracle::random_instance(3, 4, 2, 6);
  const SensorStats ideal = SensorStats::ideal(inst.stats.alpha);
  const CMatrix he = inst.heff();
  const ConditionalMoments m1 = conditional_moments(he, ideal, 0.3, Hypothesis::H1);
  const ConditionalMoments m0 = conditional_moments(he, ideal, 0.3, Hypothesis::H0);
  const CVector s = he * ideal.alpha.cast<Complex>();
  CHECK((m1.mean - s).norm() < 1e-12 * s.norm());
  CHECK((m0.mean + s).norm() < 1e-12 * s.norm());
  CHECK((m1.cov - 0.3 * CMatrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(m1.pcov.norm() < 1e-12);
}

TEST_CASE("analytic moments match enumeration", "[sensing]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = oracle::random_instance(1 + seed % 5, 3, 1 + seed % 3, 100 + seed);
    const CMatrix he = inst.heff();
    for (Hypothesis h : {Hypothesis::H0, Hypothesis::H1}) {
      const ConditionalMoments m = conditional_moments(he, inst.stats, inst.noise_power, h);
      const auto ref = oracle::enumerated_moments(he, inst.stats, inst.noise_power, h);
      CHECK((augment(m.mean) - ref.mean).norm() <= 1e-10 * ref.mean.norm());
      CHECK((m.aug_cov - ref.cov).norm() <= 1e-10 * ref.cov.norm());
    }
  }
}

TEST_CASE("analytic moments match Monte Carlo draws", "[sensing]") {
  const auto inst = oracle::random_instance(3, 4, 2, 44);
  const CMatrix he = inst.heff();
  const ConditionalMoments m = conditional_moments(he, inst.stats, inst.noise_power, Hypothesis::H1);
  RandomStream rng(8);
  const int n = 100000;
  CVector mean = CVector::Zero(2);
  CMatrix second = CMatrix::Zero(2, 2);
  CMatrix pseudo = CMatrix::Zero(2, 2);
  for (int i = 0; i < n; ++i) {
    const RVector x = sample_decisions(inst.stats, Hypothesis::H1, rng);
    const CVector y = received_signal(he, inst.stats, x, inst.noise_power, rng);
    mean += y;
    second += y * y.adjoint();
    pseudo += y * y.transpose();
  }
  mean /= n;
  const CMatrix cov = second / n - mean * mean.adjoint();
  const CMatrix pcov = pseudo / n - mean * mean.transpose();
  const double scale = m.cov.norm();
  CHECK((mean - m.mean).norm() <= 0.03 * std::max(m.mean.norm(), std::sqrt(scale)));
  CHECK((cov - m.cov).norm() <= 0.03 * scale);
  CHECK((pcov - m.pcov).norm() <= 0.03 * scale);
}

TEST_CASE("augmented covariance structure", "[sensing]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = oracle::random_instance(4, 5, 3, 200 + seed);
    const ConditionalMoments m = conditional_moments(inst.heff(), inst.stats, inst.noise_power, Hypothesis::H0);
    CHECK((m.pcov - m.pcov.transpose()).norm() <= 1e-14 * m.pcov.norm());
    CHECK((m.cov - m.cov.adjoint()).norm() <= 1e-12 * m.cov.norm());
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(m.aug_cov);
    CHECK(eig.eigenvalues().minCoeff() >= inst.noise_power * (1.0 - 1e-10));
  }
}

TEST_CASE("augmenting vectors and matrices", "[sensing]") {
  CVector real(2);
  real << 1.0, -2.0;
  const CVector ar = augment(real);
  CHECK(ar.head(2) == ar.tail(2));
  CVector j(1);
  j << Complex(0, 1);
  const CVector aj = augment(j);
  CHECK(aj(0) == Complex(0, 1));
  CHECK(aj(1) == Complex(0, -1));
  CVector v(3);
  v << Complex(1, 2), Complex(-0.5, 0.1), Complex(0, 3);
  CHECK(augment(v).squaredNorm() == Approx(2.0 * v.squaredNorm()));
  CMatrix a(1, 2);
  a << Complex(1, 1), Complex(0, -2);
  const CMatrix aa = augment_matrix(a);
  CHECK(aa(1, 0) == Complex(1, -1));
  CHECK(aa(1, 1) == Complex(0, 2));
}
