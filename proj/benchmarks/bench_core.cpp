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

#include "holofuse/channel.hpp"
#include "holofuse/evaluation.hpp"
#include "holofuse/fusion.hpp"
#include "holofuse/geometry.hpp"
#include "holofuse/optimizer.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace holofuse;

struct Setup {
  ChannelSet channels;
  SensorStats stats;
  double noise = dbm_to_watts(-50.0);
  PhaseConfig init;
};

Setup make_setup(std::size_t K, std::size_t M, std::size_t N) {
  RandomStream rng(7);
  SceneConfig sc;
  sc.num_sensors = K;
  sc.num_rhs_elements = M;
  sc.num_feeds = N;
  sc.num_digital = 0;
  RandomStream scene_rng = rng.substream("scene");
  const Scene scene = build_scene(sc, scene_rng);
  FadingParams fp;
  RandomStream kr = rng.substream("rician");
  fp.rician_factors = draw_rician_factors(K, 3.0, 5.0, kr);
  Setup s;
  s.channels = synthesize_channels(scene, fp, rng.substream("channels"));
  s.stats = SensorStats::identical(K, 0.5, 0.05);
  RandomStream ir = rng.substream("ao_init");
  s.init = PhaseConfig::uniform_random(M, ir);
  return s;
}

void BM_LambdaMaxDense(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  const Setup s = make_setup(10, M, 1);
  const CMatrix heff = effective_channel(s.channels, s.init.theta());
  const auto w = optimal_weights(DesignKind::FuC0, heff, s.stats, s.noise);
  const CMatrix psi = build_psi(w.augmented(), s.channels, s.stats, s.noise, Hypothesis::H0);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_max(psi));
}
BENCHMARK(BM_LambdaMaxDense)->Arg(25)->Arg(64)->Arg(144)->Unit(benchmark::kMicrosecond);

void BM_FucStepOperator(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  const Setup s = make_setup(10, M, 1);
  const CMatrix heff = effective_channel(s.channels, s.init.theta());
  const auto w = optimal_weights(DesignKind::FuC0, heff, s.stats, s.noise);
  for (auto _ : state) {
    const FucStepOperator op(w.augmented(), s.channels, s.stats, s.noise, Hypothesis::H0);
    benchmark::DoNotOptimize(op.mm_update(s.init));
  }
}
BENCHMARK(BM_FucStepOperator)->Arg(25)->Arg(64)->Arg(144)->Unit(benchmark::kMicrosecond);

void BM_AoJointDesign(benchmark::State& state) {
  const auto kind = static_cast<DesignKind>(state.range(0));
  const Setup s = make_setup(10, static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ao_joint_design(kind, s.channels, s.stats, s.noise, s.init).objective());
  }
}
BENCHMARK(BM_AoJointDesign)->ArgsProduct({{0, 1, 2}, {64, 144}})->Unit(benchmark::kMillisecond);

void BM_Llr(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  const Setup s = make_setup(K, 64, 1);
  const CMatrix heff = effective_channel(s.channels, s.init.theta());
  const LlrEvaluator eval(heff, s.stats.alpha, s.noise, s.stats.pmf(Hypothesis::H1), s.stats.pmf(Hypothesis::H0));
  RandomStream rng(3);
  const CVector y = received_signal(heff, s.stats, sample_decisions(s.stats, Hypothesis::H1, rng), s.noise, rng);
  for (auto _ : state) benchmark::DoNotOptimize(eval(y));
}
BENCHMARK(BM_Llr)->Arg(4)->Arg(10)->Arg(14);

void BM_RocMonteCarloWl(benchmark::State& state) {
  const Setup s = make_setup(10, 64, 1);
  const CMatrix heff = effective_channel(s.channels, s.init.theta());
  const DetectionSystem sys{heff, s.stats, s.noise};
  const auto rule = FusionRule::widely_linear(optimal_weights(DesignKind::IS, heff, s.stats, s.noise));
  const RandomStream rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(roc_monte_carlo(sys, rule, 10000, rng).points.size());
}
BENCHMARK(BM_RocMonteCarloWl)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
