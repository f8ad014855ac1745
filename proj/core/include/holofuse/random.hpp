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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace holofuse {

// Seeded random source with named, index-addressable substreams.
//
// A substream's seed depends only on the parent seed, the name and the index,
// never on how much of the parent has been consumed. Experiments derive every
// draw (scene, channels, AO init, per-trial decisions and noise) from one
// master seed through substreams, so changing the trial count or the worker
// count leaves all other draws untouched.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  [[nodiscard]] RandomStream substream(std::string_view name, std::uint64_t index = 0) const;
  [[nodiscard]] RandomStream substream(std::string_view name, std::uint64_t index,
                                       std::uint64_t sub_index) const;

  double uniform(double lo, double hi);
  double standard_normal();
  // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_normal(double variance = 1.0);
  bool bernoulli(double p);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// splitmix64 finalizer; exposed for seed derivation and config hashing.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

}  // namespace holofuse
