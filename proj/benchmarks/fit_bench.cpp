/* Copyright 2026 The signpose Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include "signpose/retarget.hpp"
#include "signpose/synthetic.hpp"

namespace {

using namespace signpose;

void BM_FitFrameFromRest(benchmark::State& state) {
  const KinematicModel& model = default_upper_body_model();
  std::mt19937_64 rng(12345);
  const FramePose f = synthesize_frame(model, random_pose(model, rng, 0.3), default_synthetic_camera(), 0, 0.0);
  const auto obs = gather_model_keypoints(f);
  const PoseParams rest = PoseParams::rest(model);
  const Camera cam = estimate_camera(model, rest, obs);
  for (auto _ : state) benchmark::DoNotOptimize(fit_frame(model, obs, rest, cam, FitConfig{}));
}
BENCHMARK(BM_FitFrameFromRest)->Unit(benchmark::kMillisecond);

void BM_FitFrameWarmStart(benchmark::State& state) {
  const KinematicModel& model = default_upper_body_model();
  const SyntheticMotion m = synthetic_motion(model, default_synthetic_camera(), 2, 30.0, 0.5, 3);
  const auto obs = gather_model_keypoints(m.noisy.frames[1]);
  FitConfig cfg;
  cfg.staged = false;
  cfg.hand_flip_restarts = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_frame(model, obs, m.poses[0], default_synthetic_camera(), cfg, &m.poses[0]));
  }
}
BENCHMARK(BM_FitFrameWarmStart)->Unit(benchmark::kMillisecond);

void BM_EnergyJacobian(benchmark::State& state) {
  const KinematicModel& model = default_upper_body_model();
  std::mt19937_64 rng(1);
  const PoseParams pose = random_pose(model, rng, 0.5);
  const FramePose f = synthesize_frame(model, pose, default_synthetic_camera(), 0, 0.0);
  const auto obs = gather_model_keypoints(f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_jacobian(model, pose, default_synthetic_camera(), obs, nullptr, FitConfig{}));
  }
}
BENCHMARK(BM_EnergyJacobian);

}  // namespace
