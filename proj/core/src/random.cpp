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

#include "holofuse/random.hpp"

#include <cmath>

namespace holofuse {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

RandomStream RandomStream::substream(std::string_view name, std::uint64_t index) const {
  return RandomStream(mix64(mix64(seed_ ^ fnv1a64(name)) + index));
}

RandomStream RandomStream::substream(std::string_view name, std::uint64_t index,
                                     std::uint64_t sub_index) const {
  return RandomStream(mix64(mix64(mix64(seed_ ^ fnv1a64(name)) + index) + sub_index));
}

double RandomStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RandomStream::standard_normal() { return normal_(engine_); }

std::complex<double> RandomStream::complex_normal(double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {s * re, s * im};
}

bool RandomStream::bernoulli(double p) {
  return std::generate_canonical<double, 53>(engine_) < p;
}

}  // namespace holofuse
