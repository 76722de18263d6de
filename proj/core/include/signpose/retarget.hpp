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

// Per-frame fitting of the kinematic model to 2D keypoints with frozen
// shape: Huber-robust reprojection + quadratic pose prior + inter-frame
// term, minimized by Levenberg-Marquardt.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "signpose/kinematics.hpp"
#include "signpose/pose_io.hpp"
#include "signpose/temporal_filter.hpp"

namespace signpose {

struct FitConfig {
  double robust_delta = 5.0;  // px
  double lambda_prior = 1e-3;
  double lambda_temporal = 1e-2;
  int max_iterations = 100;
  double gradient_tolerance = 1e-6;
  // Stop once an accepted step lowers the energy by less than this fraction.
  double function_tolerance = 1e-7;
  double lm_damping_init = 1e-3;
  // Whether the camera scale is a decision variable. Sequences estimate it
  // on the first frame and hold it fixed afterwards.
  bool fit_scale = true;
  // Spend the first quarter of the iteration budget with finger rotations
  // frozen. Helps fits that start far from the answer.
  bool staged = true;
  // After the main fit, retry each hand with its palm mirrored through the
  // image plane and keep whichever fit has lower energy. Weak perspective
  // cannot tell the two apart locally.
  bool hand_flip_restarts = true;

  void validate() const;
};

// Column layout of the parameter vector used by the Jacobian:
// [theta (3 per joint) | root rotation (3) | root translation (3) |
//  camera scale (1) | camera offset (2)].
struct ParamLayout {
  std::size_t joints;

  std::size_t theta(std::size_t j) const { return 3 * j; }
  std::size_t root_rotation() const { return 3 * joints; }
  std::size_t root_translation() const { return 3 * joints + 3; }
  std::size_t scale() const { return 3 * joints + 6; }
  std::size_t offset() const { return 3 * joints + 7; }
  std::size_t size() const { return 3 * joints + 9; }
};

Eigen::VectorXd pack_params(const PoseParams& pose, const Camera& camera);
void unpack_params(const Eigen::VectorXd& x, PoseParams& pose, Camera& camera);

struct EnergyValue {
  double value = 0.0;
  // Two rows per joint (weighted robustified reprojection), then 3 prior rows
  // per joint, then 3 temporal rows per joint when a previous pose is given.
  // value == 0.5 * residuals.squaredNorm().
  Eigen::VectorXd residuals;
};

// Huber penalty: 0.5 r^2 for |r| <= delta, delta (|r| - delta / 2) beyond.
double huber(double r, double delta);

// Observations are in model joint order. Throws InvalidArgument if the
// count differs from the model's joint count.
EnergyValue energy(const KinematicModel& model, const PoseParams& pose, const Camera& camera,
                   std::span<const Keypoint2D> observed, const PoseParams* prev_pose,
                   const FitConfig& cfg);

// Sparse-schema frame version; throws on schema mismatch.
EnergyValue energy(const KinematicModel& model, const PoseParams& pose, const Camera& camera,
                   const FramePose& observed, const PoseParams* prev_pose, const FitConfig& cfg);

// d residuals / d params, columns per ParamLayout.
Eigen::MatrixXd energy_jacobian(const KinematicModel& model, const PoseParams& pose,
                                const Camera& camera, std::span<const Keypoint2D> observed,
                                const PoseParams* prev_pose, const FitConfig& cfg);

Eigen::MatrixXd energy_jacobian(const KinematicModel& model, const PoseParams& pose,
                                const Camera& camera, const FramePose& observed,
                                const PoseParams* prev_pose, const FitConfig& cfg);

struct FitResult {
  std::int64_t frame_index = 0;
  double timestamp = 0.0;
  PoseParams pose;
  Camera camera;
  std::vector<Vec3> joints3d;
  double residual = 0.0;
  double reprojection_rmse = 0.0;
  bool converged = false;
  int iterations_used = 0;
};

// Weighted least-squares scale and offset aligning the model's projection to
// the confident observations. Scale comes from the ratio of spreads, so it
// is always positive.
Camera estimate_camera(const KinematicModel& model, const PoseParams& pose,
                       std::span<const Keypoint2D> observed);

// Root translation is held at its initial value: under weak perspective its
// x/y duplicate the camera offset and z is unobservable.
FitResult fit_frame(const KinematicModel& model, std::span<const Keypoint2D> observed,
                    const PoseParams& init_pose, const Camera& init_camera, const FitConfig& cfg,
                    const PoseParams* prev_pose = nullptr);

FitResult fit_frame(const KinematicModel& model, const FramePose& observed,
                    const PoseParams& init_pose, const Camera& init_camera, const FitConfig& cfg,
                    const PoseParams* prev_pose = nullptr);

struct SequenceFitOptions {
  bool smooth = true;
};

// Fits every frame in order, warm-starting from the previous solution. The
// per-frame camera offsets are then folded into the root translation so all
// frames share the first frame's camera, and the 3D joint tracks are
// smoothed with the 1-euro filter. Smoothing runs in model units, so
// smooth.coordinate_scale is ignored.
std::vector<FitResult> fit_sequence(const KinematicModel& model, const PoseSequence& seq,
                                    const FitConfig& cfg, const FilterParams& smooth,
                                    SequenceFitOptions options = {});

// The smoothing step of fit_sequence on its own: 1-euro filters every 3D
// joint track of an already fitted sequence.
std::vector<FitResult> smooth_fits(std::vector<FitResult> fits, const FilterParams& smooth);

std::string write_fits(const std::vector<FitResult>& fits);
std::vector<FitResult> parse_fits(std::string_view bytes);

}  // namespace signpose
