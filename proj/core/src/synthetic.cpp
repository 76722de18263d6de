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

#include "signpose/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "signpose/error.hpp"

namespace signpose {

namespace {

constexpr double kPi = std::numbers::pi;

// 70-point face contour in the head frame, relative to the nose tip.
std::vector<Vec3> face_template() {
  std::vector<Vec3> pts;
  pts.reserve(70);
  for (int i = 0; i < 17; ++i) {  // jaw
    const double a = kPi * i / 16.0;
    pts.emplace_back(-0.075 * std::cos(a), -0.03 + 0.10 * std::sin(a), -0.04);
  }
  for (int side = -1; side <= 1; side += 2) {  // brows
    for (int i = 0; i < 5; ++i) {
      const double u = i / 4.0;
      const double x = side < 0 ? -0.06 + 0.045 * u : 0.015 + 0.045 * u;
      pts.emplace_back(x, -0.065 - 0.008 * std::sin(kPi * u), -0.01);
    }
  }
  for (int i = 0; i < 4; ++i) pts.emplace_back(0.0, -0.045 + 0.015 * i, 0.0);  // bridge
  for (int i = 0; i < 5; ++i) pts.emplace_back(-0.02 + 0.01 * i, 0.012, -0.01);  // nostrils
  for (int side = -1; side <= 1; side += 2) {  // eyes
    for (int i = 0; i < 6; ++i) {
      const double a = 2.0 * kPi * i / 6.0;
      pts.emplace_back(0.035 * side - 0.014 * std::cos(a), -0.035 - 0.006 * std::sin(a), -0.015);
    }
  }
  for (int i = 0; i < 12; ++i) {  // outer lip
    const double a = 2.0 * kPi * i / 12.0;
    pts.emplace_back(-0.028 * std::cos(a), 0.04 - 0.012 * std::sin(a), -0.01);
  }
  for (int i = 0; i < 8; ++i) {  // inner lip
    const double a = 2.0 * kPi * i / 8.0;
    pts.emplace_back(-0.018 * std::cos(a), 0.04 - 0.005 * std::sin(a), -0.01);
  }
  pts.emplace_back(-0.035, -0.035, -0.012);  // pupils
  pts.emplace_back(0.035, -0.035, -0.012);
  return pts;
}

std::vector<bool> has_children(const KinematicModel& model) {
  std::vector<bool> out(model.joint_count(), false);
  for (int p : model.parents) {
    if (p >= 0) out[static_cast<std::size_t>(p)] = true;
  }
  return out;
}

}  // namespace

Camera default_synthetic_camera() {
  Camera c;
  c.scale = 400.0;
  c.offset = Vec2(256.0, 150.0);
  return c;
}

PoseParams random_pose(const KinematicModel& model, std::mt19937_64& rng, double amplitude,
                       double root_amplitude) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PoseParams p = PoseParams::rest(model);
  const auto inner = has_children(model);
  for (std::size_t j = 0; j < model.joint_count(); ++j) {
    if (!inner[j]) continue;
    p.theta[j] = amplitude * Vec3(u(rng), u(rng), u(rng));
  }
  p.root_rotation = root_amplitude * Vec3(u(rng), u(rng), u(rng));
  return p;
}

FramePose synthesize_frame(const KinematicModel& model, const PoseParams& pose,
                           const Camera& camera, std::int64_t frame_index, double timestamp) {
  if (model.joint_count() != kSparseJointCount) {
    throw InvalidArgument("synthesize_frame: requires the 67-joint sparse layout");
  }
  const KinematicState fk = forward_kinematics_state(model, pose);
  FramePose f;
  f.frame_index = frame_index;
  f.timestamp = timestamp;
  auto emit = [&](std::size_t first, std::size_t count, std::vector<Keypoint2D>& out) {
    for (std::size_t k = 0; k < count; ++k) {
      const Vec2 p = project(camera, fk.positions[first + k]);
      out.push_back({p.x(), p.y(), 1.0});
    }
  };
  emit(kBodyJointOffset, kSparseLayout.body, f.body);
  emit(kLeftHandJointOffset, kSparseLayout.hand, f.left_hand);
  emit(kRightHandJointOffset, kSparseLayout.hand, f.right_hand);

  static const std::vector<Vec3> face = face_template();
  constexpr std::size_t kNose = 0;
  for (const Vec3& local : face) {
    const Vec3 world = fk.positions[kNose] + fk.rotations[kNose] * local;
    const Vec2 p = project(camera, world);
    f.face.push_back({p.x(), p.y(), 1.0});
  }
  return f;
}

void add_keypoint_noise(FramePose& frame, double sigma_px, std::mt19937_64& rng) {
  if (sigma_px <= 0.0) return;
  std::normal_distribution<double> n(0.0, sigma_px);
  for (KeypointGroup g : kAllGroups) {
    for (Keypoint2D& p : frame.group(g)) {
      p.x += n(rng);
      p.y += n(rng);
    }
  }
}

SyntheticMotion synthetic_motion(const KinematicModel& model, const Camera& camera,
                                 std::size_t frames, double fps, double noise_px,
                                 std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.2, 0.6);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);

  const auto inner = has_children(model);
  struct Channel {
    Vec3 amp, phase;
    double freq;
  };
  std::vector<Channel> channels(model.joint_count());
  for (std::size_t j = 0; j < model.joint_count(); ++j) {
    if (!inner[j]) continue;
    channels[j] = {amplitude * Vec3(u(rng), u(rng), u(rng)), Vec3(phase(rng), phase(rng), phase(rng)), freq(rng)};
  }
  const Vec3 root_amp = 0.05 * Vec3(u(rng), u(rng), u(rng));
  const double root_freq = freq(rng);

  SyntheticMotion out;
  out.clean.schema = out.noisy.schema = Schema::Sparse;
  out.clean.fps = out.noisy.fps = fps;
  out.clean.source_id = out.noisy.source_id = "synthetic-motion-" + std::to_string(seed);
  for (std::size_t i = 0; i < frames; ++i) {
    const double t = static_cast<double>(i) / fps;
    PoseParams p = PoseParams::rest(model);
    for (std::size_t j = 0; j < model.joint_count(); ++j) {
      if (!inner[j]) continue;
      const Channel& c = channels[j];
      for (int a = 0; a < 3; ++a) p.theta[j][a] = c.amp[a] * std::sin(2.0 * kPi * c.freq * t + c.phase[a]);
    }
    for (int a = 0; a < 3; ++a) p.root_rotation[a] = root_amp[a] * std::sin(2.0 * kPi * root_freq * t + a);
    FramePose f = synthesize_frame(model, p, camera, static_cast<std::int64_t>(i), t);
    out.clean.frames.push_back(f);
    add_keypoint_noise(f, noise_px, rng);
    out.noisy.frames.push_back(std::move(f));
    out.poses.push_back(std::move(p));
  }
  return out;
}

SinusoidFixture sinusoid_fixture(std::size_t frames, double fps, double sigma_px,
                                 double amplitude_px, double frequency_hz, std::uint64_t seed) {
  const KinematicModel& model = default_upper_body_model();
  const FramePose base = synthesize_frame(model, PoseParams::rest(model), default_synthetic_camera(), 0, 0.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);

  std::vector<std::array<double, 2>> phases;
  for (KeypointGroup g : kAllGroups) {
    for (std::size_t k = 0; k < base.group(g).size(); ++k) phases.push_back({phase(rng), phase(rng)});
  }

  SinusoidFixture out;
  out.clean.schema = out.noisy.schema = Schema::Sparse;
  out.clean.fps = out.noisy.fps = fps;
  out.clean.source_id = out.noisy.source_id = "sinusoid-" + std::to_string(seed);
  for (std::size_t i = 0; i < frames; ++i) {
    const double t = static_cast<double>(i) / fps;
    FramePose f = base;
    f.frame_index = static_cast<std::int64_t>(i);
    f.timestamp = t;
    std::size_t c = 0;
    for (KeypointGroup g : kAllGroups) {
      for (Keypoint2D& p : f.group(g)) {
        p.x += amplitude_px * std::sin(2.0 * kPi * frequency_hz * t + phases[c][0]);
        p.y += amplitude_px * std::sin(2.0 * kPi * frequency_hz * t + phases[c][1]);
        ++c;
      }
    }
    out.clean.frames.push_back(f);
    add_keypoint_noise(f, sigma_px, rng);
    out.noisy.frames.push_back(std::move(f));
  }
  return out;
}

double trajectory_rmse(const PoseSequence& a, const PoseSequence& b) {
  if (a.frames.size() != b.frames.size()) throw InvalidArgument("trajectory_rmse: frame count mismatch");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    for (KeypointGroup g : kAllGroups) {
      const auto& pa = a.frames[i].group(g);
      const auto& pb = b.frames[i].group(g);
      if (pa.size() != pb.size()) throw InvalidArgument("trajectory_rmse: keypoint count mismatch");
      for (std::size_t k = 0; k < pa.size(); ++k) {
        const double dx = pa[k].x - pb[k].x;
        const double dy = pa[k].y - pb[k].y;
        sum += dx * dx + dy * dy;
        ++count;
      }
    }
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

PoseSequence embed_dense(const PoseSequence& sparse, const SchemaMapping& mapping) {
  if (sparse.schema != Schema::Sparse) throw InvalidArgument("embed_dense: input must use the sparse schema");
  check_mapping(mapping);
  const auto dense_size = [](const std::vector<std::pair<std::size_t, std::size_t>>& pairs, std::size_t min) {
    std::size_t n = min;
    for (const auto& [d, s] : pairs) n = std::max(n, d + 1);
    return n;
  };
  const std::size_t face_n = dense_size(mapping.face, 478);
  const std::size_t body_n = dense_size(mapping.body, kDenseLayout.body);
  const std::size_t hand_n = dense_size(mapping.hand, kDenseLayout.hand);
  const auto scatter = [](const std::vector<Keypoint2D>& src, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                          std::size_t n) {
    std::vector<Keypoint2D> out(n, Keypoint2D{0.0, 0.0, 0.0});
    for (const auto& [d, s] : pairs) out[d] = src.at(s);
    return out;
  };
  PoseSequence out = sparse;
  out.schema = Schema::Dense;
  for (FramePose& f : out.frames) {
    f.face = scatter(f.face, mapping.face, face_n);
    f.body = scatter(f.body, mapping.body, body_n);
    f.left_hand = scatter(f.left_hand, mapping.hand, hand_n);
    f.right_hand = scatter(f.right_hand, mapping.hand, hand_n);
  }
  return out;
}

Image synthetic_appearance(int width, int height) {
  Image img(width, height, 3);
  const double cx = 0.5 * width;
  const double cy = 0.45 * height;
  const double r = 0.25 * std::min(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool disc = std::hypot(x - cx, y - cy) < r;
      img.at(x, y, 0) = static_cast<std::uint8_t>(disc ? 220 : 40 + (150 * x) / std::max(1, width - 1));
      img.at(x, y, 1) = static_cast<std::uint8_t>(disc ? 180 : 60 + (120 * y) / std::max(1, height - 1));
      img.at(x, y, 2) = static_cast<std::uint8_t>(disc ? 150 : 110);
    }
  }
  return img;
}

}  // namespace signpose
