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

#include "signpose/kinematics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "json.hpp"
#include "signpose/error.hpp"

namespace signpose {

using nlohmann::json;

int KinematicModel::root() const {
  for (std::size_t j = 0; j < parents.size(); ++j) {
    if (parents[j] < 0) return static_cast<int>(j);
  }
  return -1;
}

void KinematicModel::finalize() {
  const std::size_t n = parents.size();
  if (n == 0) throw InvalidArgument("model: no joints");
  if (rest_offsets.size() != n || shape_alpha.size() != n) {
    throw InvalidArgument("model: parents, rest_offsets and shape_alpha must have equal length");
  }
  if (names.empty()) {
    for (std::size_t j = 0; j < n; ++j) names.push_back("joint" + std::to_string(j));
  }
  if (names.size() != n) throw InvalidArgument("model: one name per joint required");
  if (parts.empty()) parts.assign(n, BodyPart::Body);
  if (parts.size() != n) throw InvalidArgument("model: one part label per joint required");

  int roots = 0;
  std::vector<std::vector<int>> children(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int p = parents[j];
    if (p < 0) {
      ++roots;
    } else if (static_cast<std::size_t>(p) >= n || static_cast<std::size_t>(p) == j) {
      throw InvalidArgument("model: joint " + names[j] + " has invalid parent " + std::to_string(p));
    } else {
      children[static_cast<std::size_t>(p)].push_back(static_cast<int>(j));
    }
    if (!rest_offsets[j].allFinite()) throw InvalidArgument("model: non-finite offset at " + names[j]);
    if (!(shape_alpha[j] > 0.0) || !std::isfinite(shape_alpha[j])) {
      throw InvalidArgument("model: shape_alpha must be > 0 at " + names[j]);
    }
  }
  if (roots != 1) throw InvalidArgument("model: expected exactly one root, found " + std::to_string(roots));

  order_.clear();
  order_.push_back(root());
  for (std::size_t head = 0; head < order_.size(); ++head) {
    for (int c : children[static_cast<std::size_t>(order_[head])]) order_.push_back(c);
  }
  if (order_.size() != n) throw InvalidArgument("model: joint tree contains a cycle");
}

namespace {

struct JointSpec {
  const char* name;
  int parent;
  double x, y, z;
};

// BODY_25 order. Units are roughly metres; y down, x towards the image right,
// so the subject's right side has negative x.
constexpr JointSpec kBody[25] = {
    {"nose", 1, 0.0, -0.22, 0.06},
    {"neck", -1, 0.0, 0.0, 0.0},
    {"r_shoulder", 1, -0.19, 0.02, 0.0},
    {"r_elbow", 2, -0.05, 0.27, 0.02},
    {"r_wrist", 3, 0.02, 0.24, 0.06},
    {"l_shoulder", 1, 0.19, 0.02, 0.0},
    {"l_elbow", 5, 0.05, 0.27, 0.02},
    {"l_wrist", 6, -0.02, 0.24, 0.06},
    {"mid_hip", 1, 0.0, 0.52, 0.0},
    {"r_hip", 8, -0.1, 0.0, 0.0},
    {"r_knee", 9, 0.0, 0.43, 0.02},
    {"r_ankle", 10, 0.0, 0.41, -0.02},
    {"l_hip", 8, 0.1, 0.0, 0.0},
    {"l_knee", 12, 0.0, 0.43, 0.02},
    {"l_ankle", 13, 0.0, 0.41, -0.02},
    {"r_eye", 0, -0.035, -0.035, -0.02},
    {"l_eye", 0, 0.035, -0.035, -0.02},
    {"r_ear", 0, -0.075, -0.01, -0.09},
    {"l_ear", 0, 0.075, -0.01, -0.09},
    {"l_big_toe", 14, -0.02, 0.06, 0.14},
    {"l_small_toe", 14, 0.04, 0.06, 0.12},
    {"l_heel", 14, 0.0, 0.06, -0.05},
    {"r_big_toe", 11, 0.02, 0.06, 0.14},
    {"r_small_toe", 11, -0.04, 0.06, 0.12},
    {"r_heel", 11, 0.0, 0.06, -0.05},
};

// Right hand, OpenPose hand order (wrist, then thumb/index/middle/ring/pinky
// from base to tip). Parents are hand-local; -1 means the forearm.
constexpr JointSpec kRightHand[21] = {
    {"wrist", -1, 0.02, 0.24, 0.06},
    {"thumb_cmc", 0, 0.025, 0.02, 0.015},
    {"thumb_mcp", 1, 0.015, 0.025, 0.005},
    {"thumb_ip", 2, 0.01, 0.022, 0.0},
    {"thumb_tip", 3, 0.006, 0.02, 0.0},
    {"index_mcp", 0, 0.02, 0.08, 0.0},
    {"index_pip", 5, 0.002, 0.035, 0.0},
    {"index_dip", 6, 0.001, 0.024, 0.0},
    {"index_tip", 7, 0.0, 0.02, 0.0},
    {"middle_mcp", 0, 0.0, 0.085, 0.0},
    {"middle_pip", 9, 0.0, 0.04, 0.0},
    {"middle_dip", 10, 0.0, 0.027, 0.0},
    {"middle_tip", 11, 0.0, 0.022, 0.0},
    {"ring_mcp", 0, -0.018, 0.08, 0.0},
    {"ring_pip", 13, -0.002, 0.036, 0.0},
    {"ring_dip", 14, -0.001, 0.025, 0.0},
    {"ring_tip", 15, 0.0, 0.02, 0.0},
    {"pinky_mcp", 0, -0.034, 0.07, 0.0},
    {"pinky_pip", 17, -0.004, 0.028, 0.0},
    {"pinky_dip", 18, -0.002, 0.02, 0.0},
    {"pinky_tip", 19, 0.0, 0.018, 0.0},
};

void add_hand(KinematicModel& m, std::size_t offset, int forearm_joint, bool mirror, BodyPart part,
              const char* prefix) {
  for (std::size_t k = 0; k < 21; ++k) {
    const JointSpec& s = kRightHand[k];
    m.names.push_back(std::string(prefix) + s.name);
    m.parents.push_back(s.parent < 0 ? forearm_joint : static_cast<int>(offset) + s.parent);
    m.rest_offsets.emplace_back(mirror ? -s.x : s.x, s.y, s.z);
    m.shape_alpha.push_back(1.0);
    m.parts.push_back(part);
  }
}

std::string_view part_name(BodyPart p) {
  switch (p) {
    case BodyPart::Body: return "body";
    case BodyPart::LeftHand: return "left_hand";
    case BodyPart::RightHand: return "right_hand";
    case BodyPart::Face: return "face";
  }
  return "body";
}

BodyPart part_from_name(std::string_view s) {
  if (s == "body") return BodyPart::Body;
  if (s == "left_hand") return BodyPart::LeftHand;
  if (s == "right_hand") return BodyPart::RightHand;
  if (s == "face") return BodyPart::Face;
  throw ParseError("unknown part '" + std::string(s) + "'");
}

}  // namespace

const KinematicModel& default_upper_body_model() {
  static const KinematicModel model = [] {
    KinematicModel m;
    for (const JointSpec& s : kBody) {
      m.names.push_back(s.name);
      m.parents.push_back(s.parent);
      m.rest_offsets.emplace_back(s.x, s.y, s.z);
      m.shape_alpha.push_back(1.0);
      m.parts.push_back(BodyPart::Body);
    }
    add_hand(m, kLeftHandJointOffset, 6, true, BodyPart::LeftHand, "lh_");
    add_hand(m, kRightHandJointOffset, 3, false, BodyPart::RightHand, "rh_");
    m.finalize();
    return m;
  }();
  return model;
}

KinematicModel parse_model(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed model document: ") + e.what());
  }
  auto joints = doc.find("joints");
  if (!doc.is_object() || joints == doc.end() || !joints->is_array()) {
    throw ParseError("missing or non-array field", std::nullopt, "joints");
  }
  KinematicModel m;
  for (std::size_t j = 0; j < joints->size(); ++j) {
    const json& jj = (*joints)[j];
    const std::string path = "joints[" + std::to_string(j) + "]";
    try {
      m.names.push_back(jj.at("name").get<std::string>());
      m.parents.push_back(jj.at("parent").get<int>());
      const auto& o = jj.at("offset");
      if (!o.is_array() || o.size() != 3) throw ParseError("offset must be [x, y, z]", std::nullopt, path);
      m.rest_offsets.emplace_back(o[0].get<double>(), o[1].get<double>(), o[2].get<double>());
      m.shape_alpha.push_back(jj.value("alpha", 1.0));
      m.parts.push_back(part_from_name(jj.value("part", std::string("body"))));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), std::nullopt, path);
    }
  }
  m.finalize();
  return m;
}

std::string write_model(const KinematicModel& model) {
  json joints = json::array();
  for (std::size_t j = 0; j < model.joint_count(); ++j) {
    const Vec3& o = model.rest_offsets[j];
    joints.push_back({{"name", model.names[j]},
                      {"parent", model.parents[j]},
                      {"offset", {o.x(), o.y(), o.z()}},
                      {"alpha", model.shape_alpha[j]},
                      {"part", std::string(part_name(model.parts[j]))}});
  }
  return json{{"joints", joints}}.dump(1) + "\n";
}

KinematicModel read_model_file(const std::string& path) { return parse_model(read_file(path)); }

PoseParams PoseParams::rest(const KinematicModel& model) {
  PoseParams p;
  p.theta.assign(model.joint_count(), Vec3::Zero());
  return p;
}

void PoseParams::validate(const KinematicModel& model) const {
  if (theta.size() != model.joint_count()) {
    throw InvalidArgument("pose: expected " + std::to_string(model.joint_count()) +
                          " joint rotations, got " + std::to_string(theta.size()));
  }
  for (const Vec3& t : theta) {
    if (!t.allFinite()) throw InvalidArgument("pose: non-finite joint rotation");
  }
  if (!root_rotation.allFinite() || !root_translation.allFinite()) {
    throw InvalidArgument("pose: non-finite root parameters");
  }
}

Mat3 rotation_from_axis_angle(const Vec3& w) {
  const double angle = w.norm();
  if (angle < 1e-12) {
    Mat3 k;
    k << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
    return Mat3::Identity() + k;
  }
  return Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
}

Mat3 axis_angle_derivative_axes(const Vec3& w) {
  const double sq = w.squaredNorm();
  if (sq < 1e-16) return Mat3::Identity();
  const Mat3 i_minus_r = Mat3::Identity() - rotation_from_axis_angle(w);
  Mat3 axes;
  for (int i = 0; i < 3; ++i) {
    axes.col(i) = (w[i] * w + w.cross(i_minus_r.col(i))) / sq;
  }
  return axes;
}

Vec3 canonicalize_axis_angle(const Vec3& w) {
  const double angle = w.norm();
  if (angle <= std::numbers::pi) return w;
  const double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  return w * (wrapped / angle);
}

KinematicState forward_kinematics_state(const KinematicModel& model, const PoseParams& pose) {
  pose.validate(model);
  const std::size_t n = model.joint_count();
  KinematicState s;
  s.positions.assign(n, Vec3::Zero());
  s.rotations.assign(n, Mat3::Identity());
  for (int j : model.topological_order()) {
    const auto ju = static_cast<std::size_t>(j);
    const int p = model.parents[ju];
    const Mat3 local = rotation_from_axis_angle(pose.theta[ju]);
    if (p < 0) {
      s.positions[ju] = pose.root_translation;
      s.rotations[ju] = rotation_from_axis_angle(pose.root_rotation) * local;
    } else {
      const auto pu = static_cast<std::size_t>(p);
      s.positions[ju] = s.positions[pu] + s.rotations[pu] * (model.shape_alpha[ju] * model.rest_offsets[ju]);
      s.rotations[ju] = s.rotations[pu] * local;
    }
  }
  return s;
}

std::vector<Vec3> forward_kinematics(const KinematicModel& model, const PoseParams& pose) {
  return forward_kinematics_state(model, pose).positions;
}

Vec2 project(const Camera& camera, const Vec3& p) {
  return camera.scale * p.head<2>() + camera.offset;
}

std::vector<Vec2> project(const Camera& camera, const std::vector<Vec3>& joints3d) {
  std::vector<Vec2> out;
  out.reserve(joints3d.size());
  for (const Vec3& p : joints3d) out.push_back(project(camera, p));
  return out;
}

std::vector<Keypoint2D> gather_model_keypoints(const FramePose& frame) {
  std::vector<Keypoint2D> out;
  out.reserve(frame.body.size() + frame.left_hand.size() + frame.right_hand.size());
  out.insert(out.end(), frame.body.begin(), frame.body.end());
  out.insert(out.end(), frame.left_hand.begin(), frame.left_hand.end());
  out.insert(out.end(), frame.right_hand.begin(), frame.right_hand.end());
  return out;
}

}  // namespace signpose
