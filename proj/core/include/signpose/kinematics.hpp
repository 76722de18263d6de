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

// Bone-scaled kinematic tree standing in for a full parametric body model.
// Model space is right-handed with y pointing down so that a weak-perspective
// camera with positive scale maps it straight onto image pixels.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "signpose/pose_io.hpp"

namespace signpose {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class BodyPart { Body, LeftHand, RightHand, Face };

struct KinematicModel {
  std::vector<std::string> names;
  std::vector<int> parents;  // -1 for the root
  std::vector<Vec3> rest_offsets;
  std::vector<double> shape_alpha;  // per-bone length multiplier
  std::vector<BodyPart> parts;      // drawing group; defaults to Body

  std::size_t joint_count() const noexcept { return parents.size(); }
  int root() const;
  // Parents before children.
  const std::vector<int>& topological_order() const { return order_; }

  // Throws InvalidArgument unless the tree is acyclic with exactly one root,
  // offsets are finite and alpha > 0. Computes the traversal order and
  // fills missing part labels.
  void finalize();

 private:
  std::vector<int> order_;
};

// Joint layout of the default model: the 25 sparse body slots, then the
// left hand's 21, then the right hand's 21.
inline constexpr std::size_t kBodyJointOffset = 0;
inline constexpr std::size_t kLeftHandJointOffset = 25;
inline constexpr std::size_t kRightHandJointOffset = 46;
inline constexpr std::size_t kSparseJointCount = 67;

const KinematicModel& default_upper_body_model();

KinematicModel parse_model(std::string_view bytes);
std::string write_model(const KinematicModel& model);
KinematicModel read_model_file(const std::string& path);

struct PoseParams {
  std::vector<Vec3> theta;  // per-joint axis-angle, radians
  Vec3 root_rotation = Vec3::Zero();
  Vec3 root_translation = Vec3::Zero();

  static PoseParams rest(const KinematicModel& model);
  void validate(const KinematicModel& model) const;
};

struct Camera {
  double scale = 1.0;       // pixels per model unit
  Vec2 offset = Vec2::Zero();  // pixels
};

Mat3 rotation_from_axis_angle(const Vec3& w);

// d R(w) / d w_i = [v_i]x R(w); returns the three axes v_i as columns.
Mat3 axis_angle_derivative_axes(const Vec3& w);

// Maps an axis-angle vector to the equivalent one with norm <= pi.
Vec3 canonicalize_axis_angle(const Vec3& w);

struct KinematicState {
  std::vector<Vec3> positions;
  std::vector<Mat3> rotations;  // accumulated rotation of each joint's frame
};

KinematicState forward_kinematics_state(const KinematicModel& model, const PoseParams& pose);
std::vector<Vec3> forward_kinematics(const KinematicModel& model, const PoseParams& pose);

Vec2 project(const Camera& camera, const Vec3& p);
std::vector<Vec2> project(const Camera& camera, const std::vector<Vec3>& joints3d);

// Sparse-schema keypoints of the joints a model covers, in model joint order.
std::vector<Keypoint2D> gather_model_keypoints(const FramePose& frame);

}  // namespace signpose
