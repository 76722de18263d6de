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

#include "signpose/render.hpp"
#include "signpose/synthetic.hpp"

namespace {

using namespace signpose;

ConditioningFrame rest_frame(int size) {
  const KinematicModel& model = default_upper_body_model();
  FitResult fit;
  fit.pose = PoseParams::rest(model);
  fit.camera = default_synthetic_camera();
  fit.joints3d = forward_kinematics(model, fit.pose);
  return make_conditioning_frame(model, fit, {}, fit.camera, SkeletonStyle{}, size, size, CannyParams{});
}

void BM_Canny(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const Image pose = rest_frame(size).pose_image;
  for (auto _ : state) benchmark::DoNotOptimize(canny(pose, CannyParams{}));
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_Canny)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_RenderSkeleton(benchmark::State& state) {
  const KinematicModel& model = default_upper_body_model();
  const auto joints = project(default_synthetic_camera(), forward_kinematics(model, PoseParams::rest(model)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rasterize_skeleton(model, joints, {}, SkeletonStyle{}, 512, 512));
  }
}
BENCHMARK(BM_RenderSkeleton)->Unit(benchmark::kMillisecond);

}  // namespace
