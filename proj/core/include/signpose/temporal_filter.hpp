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

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "signpose/pose_io.hpp"

namespace signpose {

// 1-euro filter parameters. Defaults trade jitter against lag for signer
// keypoint tracks sampled at video rate.
struct FilterParams {
  double f_min = 0.04;    // Hz, cutoff at zero speed
  double beta = 1.0;      // cutoff increase per unit of speed
  double d_cutoff = 1.0;  // Hz, cutoff for the derivative estimate
  // Pixels per filter unit. The filter is not scale invariant; beta and
  // f_min above are tuned for frame-normalized coordinates, so pipelines set
  // this to the frame size. 1 filters raw pixels.
  double coordinate_scale = 1.0;

  void validate() const;
};

struct OneEuroState {
  double x_hat_prev = 0.0;
  double dx_hat_prev = 0.0;
  double t_prev = 0.0;
  bool initialized = false;
};

// Smoothing factor of a first-order low-pass at cutoff `f` for step `dt`.
double smoothing_alpha(double cutoff_hz, double dt);

// One step of the adaptive filter. The first sample passes through with a
// zero derivative estimate. Throws InvalidArgument on a non-increasing
// timestamp or a non-finite sample.
std::pair<OneEuroState, double> one_euro_step(const OneEuroState& state, double x, double t,
                                              const FilterParams& params);

// Convenience wrapper owning the per-channel state.
class OneEuroFilter {
 public:
  explicit OneEuroFilter(FilterParams params) : params_(params) { params_.validate(); }

  double operator()(double x, double t) {
    auto [next, y] = one_euro_step(state_, x, t, params_);
    state_ = next;
    return y;
  }

  const OneEuroState& state() const noexcept { return state_; }

 private:
  FilterParams params_;
  OneEuroState state_;
};

// Filters every x and y channel independently in frame order, in units of
// coordinate_scale. Requires a gap-free sequence (no confidence-0 keypoints).
PoseSequence filter_sequence(const PoseSequence& seq, const FilterParams& params);

// Same filter over 3D point trajectories: tracks[frame][point].
std::vector<std::vector<Eigen::Vector3d>> filter_tracks(
    const std::vector<std::vector<Eigen::Vector3d>>& tracks, const std::vector<double>& timestamps,
    const FilterParams& params);

// Replaces keypoints below `conf_threshold` with a linear interpolation (in
// time) between the nearest confident neighbours of the same slot. Leading
// and trailing gaps copy the nearest confident value. Repaired keypoints get
// confidence = conf_threshold.
PoseSequence interpolate_gaps(const PoseSequence& seq, double conf_threshold = 0.5);

// Mean Euclidean displacement per keypoint per frame step, in pixels/frame.
double jitter(const PoseSequence& seq);

// 3D and 2D trajectory variants: tracks[frame][point].
double jitter(const std::vector<std::vector<Eigen::Vector3d>>& tracks);
double jitter(const std::vector<std::vector<Eigen::Vector2d>>& tracks);

}  // namespace signpose
