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

#pragma once

// Deterministic synthetic fixtures: keypoints rendered from known model
// poses, and noisy sinusoid tracks with their clean counterparts.

#include <cstdint>
#include <random>

#include "signpose/image.hpp"
#include "signpose/kinematics.hpp"
#include "signpose/pose_io.hpp"

namespace signpose {

// Frames the default model's upper body in a 512x512 canvas.
Camera default_synthetic_camera();

// Uniform in [-amplitude, amplitude] on each axis-angle component of every
// joint that has children; leaf rotations stay zero.
PoseParams random_pose(const KinematicModel& model, std::mt19937_64& rng, double amplitude,
                       double root_amplitude = 0.1);

// Sparse frame with every body/hand keypoint at the exact projection of
// FK(pose) (confidence 1), and a 70-point face contour attached to the head.
// Requires the default 67-joint layout.
FramePose synthesize_frame(const KinematicModel& model, const PoseParams& pose,
                           const Camera& camera, std::int64_t frame_index, double timestamp);

void add_keypoint_noise(FramePose& frame, double sigma_px, std::mt19937_64& rng);

struct SyntheticMotion {
  PoseSequence clean;
  PoseSequence noisy;
  std::vector<PoseParams> poses;
};

// Smooth sinusoidal joint trajectories (0.2-0.6 Hz) with optional keypoint
// noise.
SyntheticMotion synthetic_motion(const KinematicModel& model, const Camera& camera,
                                 std::size_t frames, double fps, double noise_px,
                                 std::uint64_t seed, double amplitude = 0.3);

struct SinusoidFixture {
  PoseSequence clean;
  PoseSequence noisy;
};

// Every coordinate channel is rest position + amplitude * sin(2 pi f t + phase)
// with a random phase per channel, plus N(0, sigma) noise.
SinusoidFixture sinusoid_fixture(std::size_t frames = 300, double fps = 30.0,
                                 double sigma_px = 2.0, double amplitude_px = 5.0,
                                 double frequency_hz = 0.1, std::uint64_t seed = 20240601);

// Root-mean-square keypoint distance between two sequences of equal shape.
double trajectory_rmse(const PoseSequence& a, const PoseSequence& b);

// Dense-schema copy of a sparse sequence: every mapping pair copies the
// sparse keypoint into its dense slot (later pairs win where dense slots are
// shared) and unmapped dense slots are marked missing.
PoseSequence embed_dense(const PoseSequence& sparse, const SchemaMapping& mapping);

// Smooth RGB gradient with a centred disc; deterministic appearance prompt.
Image synthetic_appearance(int width, int height);

}  // namespace signpose
