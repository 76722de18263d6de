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

#include "signpose/retarget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Geometry>

#include "signpose/error.hpp"

namespace signpose {

void FitConfig::validate() const {
  if (!(robust_delta > 0.0)) throw InvalidArgument("fit: robust_delta must be > 0");
  if (!(lambda_prior >= 0.0) || !(lambda_temporal >= 0.0)) {
    throw InvalidArgument("fit: regularizer weights must be >= 0");
  }
  if (max_iterations < 1) throw InvalidArgument("fit: max_iterations must be >= 1");
  if (!(gradient_tolerance >= 0.0)) throw InvalidArgument("fit: gradient_tolerance must be >= 0");
  if (!(function_tolerance >= 0.0)) throw InvalidArgument("fit: function_tolerance must be >= 0");
  if (!(lm_damping_init > 0.0)) throw InvalidArgument("fit: lm_damping_init must be > 0");
}

Eigen::VectorXd pack_params(const PoseParams& pose, const Camera& camera) {
  const ParamLayout L{pose.theta.size()};
  Eigen::VectorXd x(L.size());
  for (std::size_t j = 0; j < L.joints; ++j) x.segment<3>(L.theta(j)) = pose.theta[j];
  x.segment<3>(L.root_rotation()) = pose.root_rotation;
  x.segment<3>(L.root_translation()) = pose.root_translation;
  x[L.scale()] = camera.scale;
  x.segment<2>(L.offset()) = camera.offset;
  return x;
}

void unpack_params(const Eigen::VectorXd& x, PoseParams& pose, Camera& camera) {
  const ParamLayout L{pose.theta.size()};
  if (static_cast<std::size_t>(x.size()) != L.size()) throw InvalidArgument("unpack_params: size mismatch");
  for (std::size_t j = 0; j < L.joints; ++j) pose.theta[j] = x.segment<3>(L.theta(j));
  pose.root_rotation = x.segment<3>(L.root_rotation());
  pose.root_translation = x.segment<3>(L.root_translation());
  camera.scale = x[L.scale()];
  camera.offset = x.segment<2>(L.offset());
}

double huber(double r, double delta) {
  const double a = std::abs(r);
  return a <= delta ? 0.5 * a * a : delta * (a - 0.5 * delta);
}

namespace {

// Residual r = sqrt(w) f(n) e with n = |e|, chosen so that 0.5 |r|^2 = w huber(n).
struct RobustFactor {
  double f = 1.0;
  double df_over_n = 0.0;  // f'(n) / n
};

RobustFactor robust_factor(double n, double delta) {
  if (n <= delta) return {};
  const double g = std::sqrt(2.0 * delta * n - delta * delta);
  const double f = g / n;
  const double df = delta / (g * n) - g / (n * n);
  return {f, df / n};
}

void check_inputs(const KinematicModel& model, const PoseParams& pose, const Camera& camera,
                  std::span<const Keypoint2D> observed, const PoseParams* prev_pose) {
  pose.validate(model);
  if (observed.size() != model.joint_count()) {
    throw InvalidArgument("energy: " + std::to_string(observed.size()) + " observations for a " +
                          std::to_string(model.joint_count()) + "-joint model");
  }
  if (prev_pose) prev_pose->validate(model);
  if (!std::isfinite(camera.scale) || !camera.offset.allFinite()) throw InvalidArgument("energy: non-finite camera");
}

std::size_t residual_rows(const KinematicModel& model, const PoseParams* prev_pose) {
  const std::size_t n = model.joint_count();
  return 2 * n + 3 * n + (prev_pose ? 3 * n : 0);
}

void check_sparse(const FramePose& observed) {
  if (observed.body.size() != kSparseLayout.body || observed.left_hand.size() != kSparseLayout.hand ||
      observed.right_hand.size() != kSparseLayout.hand) {
    throw InvalidArgument("energy: frame " + std::to_string(observed.frame_index) +
                          " is not in the sparse schema");
  }
}

}  // namespace

EnergyValue energy(const KinematicModel& model, const PoseParams& pose, const Camera& camera,
                   std::span<const Keypoint2D> observed, const PoseParams* prev_pose,
                   const FitConfig& cfg) {
  check_inputs(model, pose, camera, observed, prev_pose);
  const std::size_t n = model.joint_count();
  const std::vector<Vec3> joints = forward_kinematics(model, pose);

  EnergyValue out;
  out.residuals = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(residual_rows(model, prev_pose)));
  double data = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = observed[k].confidence;
    if (w <= 0.0) continue;
    const Vec2 e = project(camera, joints[k]) - Vec2(observed[k].x, observed[k].y);
    const double norm = e.norm();
    data += w * huber(norm, cfg.robust_delta);
    out.residuals.segment<2>(static_cast<Eigen::Index>(2 * k)) =
        std::sqrt(w) * robust_factor(norm, cfg.robust_delta).f * e;
  }
  double prior = 0.0;
  double temporal = 0.0;
  const double sp = std::sqrt(2.0 * cfg.lambda_prior);
  const double st = std::sqrt(2.0 * cfg.lambda_temporal);
  for (std::size_t j = 0; j < n; ++j) {
    prior += pose.theta[j].squaredNorm();
    out.residuals.segment<3>(static_cast<Eigen::Index>(2 * n + 3 * j)) = sp * pose.theta[j];
    if (prev_pose) {
      const Vec3 d = pose.theta[j] - prev_pose->theta[j];
      temporal += d.squaredNorm();
      out.residuals.segment<3>(static_cast<Eigen::Index>(5 * n + 3 * j)) = st * d;
    }
  }
  out.value = data + cfg.lambda_prior * prior + cfg.lambda_temporal * temporal;
  return out;
}

EnergyValue energy(const KinematicModel& model, const PoseParams& pose, const Camera& camera,
                   const FramePose& observed, const PoseParams* prev_pose, const FitConfig& cfg) {
  check_sparse(observed);
  const auto obs = gather_model_keypoints(observed);
  return energy(model, pose, camera, obs, prev_pose, cfg);
}

Eigen::MatrixXd energy_jacobian(const KinematicModel& model, const PoseParams& pose,
                                const Camera& camera, std::span<const Keypoint2D> observed,
                                const PoseParams* prev_pose, const FitConfig& cfg) {
  check_inputs(model, pose, camera, observed, prev_pose);
  const std::size_t n = model.joint_count();
  const ParamLayout L{n};
  const KinematicState fk = forward_kinematics_state(model, pose);
  const int root = model.root();
  const auto root_u = static_cast<std::size_t>(root);

  // World-frame derivative axes of each joint's local rotation.
  std::vector<Mat3> theta_axes(n);
  const Mat3 root_rot = rotation_from_axis_angle(pose.root_rotation);
  for (std::size_t j = 0; j < n; ++j) {
    const int p = model.parents[j];
    const Mat3 pre = p < 0 ? root_rot : fk.rotations[static_cast<std::size_t>(p)];
    theta_axes[j] = pre * axis_angle_derivative_axes(pose.theta[j]);
  }
  const Mat3 root_axes = axis_angle_derivative_axes(pose.root_rotation);

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(residual_rows(model, prev_pose)),
                                              static_cast<Eigen::Index>(L.size()));
  Eigen::Matrix<double, 3, Eigen::Dynamic> dpos(3, static_cast<Eigen::Index>(L.size()));

  for (std::size_t k = 0; k < n; ++k) {
    const double w = observed[k].confidence;
    if (w <= 0.0) continue;
    const Vec3& xk = fk.positions[k];

    // d x_k / d params.
    dpos.setZero();
    for (int j = model.parents[k]; j >= 0; j = model.parents[static_cast<std::size_t>(j)]) {
      const auto ju = static_cast<std::size_t>(j);
      const Vec3 lever = xk - fk.positions[ju];
      for (int i = 0; i < 3; ++i) {
        dpos.col(static_cast<Eigen::Index>(L.theta(ju)) + i) = theta_axes[ju].col(i).cross(lever);
      }
    }
    const Vec3 root_lever = xk - fk.positions[root_u];
    for (int i = 0; i < 3; ++i) {
      dpos.col(static_cast<Eigen::Index>(L.root_rotation()) + i) = root_axes.col(i).cross(root_lever);
      dpos(i, static_cast<Eigen::Index>(L.root_translation()) + i) = 1.0;
    }

    // d e_k / d params for the weak-perspective projection.
    Eigen::Matrix<double, 2, Eigen::Dynamic> de = camera.scale * dpos.topRows<2>();
    de.col(static_cast<Eigen::Index>(L.scale())) = xk.head<2>();
    de(0, static_cast<Eigen::Index>(L.offset())) = 1.0;
    de(1, static_cast<Eigen::Index>(L.offset()) + 1) = 1.0;

    const Vec2 e = project(camera, xk) - Vec2(observed[k].x, observed[k].y);
    const RobustFactor rf = robust_factor(e.norm(), cfg.robust_delta);
    const Eigen::Matrix2d m = std::sqrt(w) * (rf.f * Eigen::Matrix2d::Identity() + rf.df_over_n * e * e.transpose());
    jac.middleRows<2>(static_cast<Eigen::Index>(2 * k)) = m * de;
  }

  const double sp = std::sqrt(2.0 * cfg.lambda_prior);
  const double st = std::sqrt(2.0 * cfg.lambda_temporal);
  for (std::size_t j = 0; j < n; ++j) {
    for (int i = 0; i < 3; ++i) {
      const auto col = static_cast<Eigen::Index>(L.theta(j)) + i;
      jac(static_cast<Eigen::Index>(2 * n + 3 * j) + i, col) = sp;
      if (prev_pose) jac(static_cast<Eigen::Index>(5 * n + 3 * j) + i, col) = st;
    }
  }
  return jac;
}

Eigen::MatrixXd energy_jacobian(const KinematicModel& model, const PoseParams& pose,
                                const Camera& camera, const FramePose& observed,
                                const PoseParams* prev_pose, const FitConfig& cfg) {
  check_sparse(observed);
  const auto obs = gather_model_keypoints(observed);
  return energy_jacobian(model, pose, camera, obs, prev_pose, cfg);
}

Camera estimate_camera(const KinematicModel& model, const PoseParams& pose,
                       std::span<const Keypoint2D> observed) {
  if (observed.size() != model.joint_count()) throw InvalidArgument("estimate_camera: observation count mismatch");
  const std::vector<Vec3> joints = forward_kinematics(model, pose);
  double wsum = 0.0;
  Vec2 model_c = Vec2::Zero();
  Vec2 image_c = Vec2::Zero();
  for (std::size_t k = 0; k < joints.size(); ++k) {
    const double w = observed[k].confidence;
    if (w <= 0.0) continue;
    wsum += w;
    model_c += w * joints[k].head<2>();
    image_c += w * Vec2(observed[k].x, observed[k].y);
  }
  Camera cam;
  if (wsum <= 0.0) return cam;
  model_c /= wsum;
  image_c /= wsum;
  double model_spread = 0.0;
  double image_spread = 0.0;
  for (std::size_t k = 0; k < joints.size(); ++k) {
    const double w = observed[k].confidence;
    if (w <= 0.0) continue;
    model_spread += w * (joints[k].head<2>() - model_c).squaredNorm();
    image_spread += w * (Vec2(observed[k].x, observed[k].y) - image_c).squaredNorm();
  }
  if (model_spread > 0.0 && image_spread > 0.0) cam.scale = std::sqrt(image_spread / model_spread);
  cam.offset = image_c - cam.scale * model_c;
  return cam;
}

namespace {

double reprojection_rmse(const std::vector<Vec3>& joints, const Camera& camera,
                         std::span<const Keypoint2D> observed) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < joints.size(); ++k) {
    if (observed[k].confidence <= 0.0) continue;
    sum += (project(camera, joints[k]) - Vec2(observed[k].x, observed[k].y)).squaredNorm();
    ++count;
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

void canonicalize(PoseParams& pose) {
  for (Vec3& t : pose.theta) t = canonicalize_axis_angle(t);
  pose.root_rotation = canonicalize_axis_angle(pose.root_rotation);
}

constexpr int kMaxRejectedSteps = 12;
// Largest rotation change (radians) of any single joint per LM step. Out of
// plane rotations have almost no curvature near a flat pose, so unlimited
// steps along them overshoot wildly. With whole_step_clamp the full step is
// shortened until its longest rotation fits, which keeps the step direction
// and suits fits far from the answer; otherwise each joint is capped on its
// own, which converges faster from a nearby start.
constexpr double kMaxJointStep = 0.2;

struct LmOutcome {
  int iterations = 0;
  bool converged = false;
};

// Levenberg-Marquardt over the given parameter columns. pose/camera hold
// the iterate in and the best iterate out; `current` is its energy.
LmOutcome run_lm(const KinematicModel& model, std::span<const Keypoint2D> observed, const PoseParams* prev_pose,
                 const FitConfig& cfg, const std::vector<Eigen::Index>& active, int max_iterations, PoseParams& pose,
                 Camera& camera, EnergyValue& current, bool whole_step_clamp) {
  const auto m = static_cast<Eigen::Index>(active.size());
  const std::size_t joints = model.joint_count();
  // Groups of active entries that belong to one rotation vector.
  std::vector<std::vector<Eigen::Index>> rotation_groups(joints + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto col = static_cast<std::size_t>(active[static_cast<std::size_t>(i)]);
    if (col < 3 * (joints + 1)) rotation_groups[col / 3].push_back(i);
  }

  double mu = cfg.lm_damping_init;
  double nu = 2.0;
  LmOutcome out;
  Eigen::VectorXd g;
  Eigen::MatrixXd A;
  auto linearize = [&] {
    const Eigen::MatrixXd full = energy_jacobian(model, pose, camera, observed, prev_pose, cfg);
    const Eigen::MatrixXd J = full(Eigen::all, active);
    A = J.transpose() * J;
    g = J.transpose() * current.residuals;
  };
  auto gradient_met = [&] {
    return g.size() == 0 || g.lpNorm<Eigen::Infinity>() <= cfg.gradient_tolerance * (1.0 + current.value);
  };

  bool stalled = false;
  while (out.iterations < max_iterations) {
    ++out.iterations;
    linearize();
    if (gradient_met()) {
      out.converged = true;
      return out;
    }
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxRejectedSteps; ++attempt) {
      Eigen::MatrixXd damped = A;
      for (Eigen::Index i = 0; i < m; ++i) damped(i, i) += mu * std::max(A(i, i), 1e-9);
      Eigen::VectorXd step = damped.ldlt().solve(-g);
      if (!step.allFinite()) {
        mu *= nu;
        nu *= 2.0;
        continue;
      }
      double longest = 0.0;
      for (const auto& group : rotation_groups) {
        double n2 = 0.0;
        for (Eigen::Index i : group) n2 += step[i] * step[i];
        const double len = std::sqrt(n2);
        if (len > kMaxJointStep && !whole_step_clamp) {
          for (Eigen::Index i : group) step[i] *= kMaxJointStep / len;
        }
        longest = std::max(longest, len);
      }
      if (whole_step_clamp && longest > kMaxJointStep) step *= kMaxJointStep / longest;

      Eigen::VectorXd x = pack_params(pose, camera);
      for (Eigen::Index i = 0; i < m; ++i) x[active[static_cast<std::size_t>(i)]] += step[i];
      PoseParams cand_pose = pose;
      Camera cand_cam = camera;
      unpack_params(x, cand_pose, cand_cam);
      if (!(cand_cam.scale > 0.0)) {
        mu *= nu;
        nu *= 2.0;
        continue;
      }
      canonicalize(cand_pose);
      EnergyValue cand = energy(model, cand_pose, cand_cam, observed, prev_pose, cfg);
      const double predicted = -(g.dot(step) + 0.5 * step.dot(A * step));
      const double actual = current.value - cand.value;
      if (std::isfinite(cand.value) && actual > 0.0) {
        const double rho = predicted > 0.0 ? actual / predicted : 1.0;
        mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
        nu = 2.0;
        pose = std::move(cand_pose);
        camera = cand_cam;
        const double before = current.value;
        current = std::move(cand);
        accepted = true;
        if (actual <= cfg.function_tolerance * before) {
          out.converged = true;
          return out;
        }
        break;
      }
      mu *= nu;
      nu *= 2.0;
    }
    if (!accepted) {
      stalled = true;
      break;
    }
  }
  if (!stalled) linearize();
  out.converged = gradient_met();
  return out;
}

// Joints whose rotation only moves finger segments: every hand joint except
// the hand roots.
std::vector<bool> finger_joints(const KinematicModel& model) {
  std::vector<bool> out(model.joint_count(), false);
  for (std::size_t j = 0; j < model.joint_count(); ++j) {
    const int p = model.parents[j];
    const bool hand = model.parts[j] == BodyPart::LeftHand || model.parts[j] == BodyPart::RightHand;
    out[j] = hand && p >= 0 && model.parts[static_cast<std::size_t>(p)] == model.parts[j];
  }
  return out;
}

// Hand joints whose parent is outside the hand.
std::vector<std::size_t> hand_roots(const KinematicModel& model) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < model.joint_count(); ++j) {
    const int p = model.parents[j];
    const bool hand = model.parts[j] == BodyPart::LeftHand || model.parts[j] == BodyPart::RightHand;
    if (hand && p >= 0 && model.parts[static_cast<std::size_t>(p)] != model.parts[j]) out.push_back(j);
  }
  return out;
}

// Mirror of the hand under `root` through the image plane, for a palm that
// lies in the root frame's xy plane: world orientation R becomes M R F with
// M, F = diag(1, 1, -1). Descendant local rotations conjugate by F.
PoseParams mirror_hand(const KinematicModel& model, const PoseParams& pose, std::size_t root) {
  const KinematicState fk = forward_kinematics_state(model, pose);
  const Mat3 flip = Vec3(1.0, 1.0, -1.0).asDiagonal();
  const auto parent = static_cast<std::size_t>(model.parents[root]);
  const Mat3 local = fk.rotations[parent].transpose() * flip * fk.rotations[root] * flip;
  const Eigen::AngleAxisd aa(local);
  PoseParams out = pose;
  out.theta[root] = canonicalize_axis_angle(aa.angle() * aa.axis());
  for (std::size_t j = 0; j < model.joint_count(); ++j) {
    if (j == root || model.parts[j] != model.parts[root]) continue;
    const Vec3& t = pose.theta[j];
    out.theta[j] = Vec3(-t.x(), -t.y(), t.z());
  }
  return out;
}

}  // namespace

FitResult fit_frame(const KinematicModel& model, std::span<const Keypoint2D> observed,
                    const PoseParams& init_pose, const Camera& init_camera, const FitConfig& cfg,
                    const PoseParams* prev_pose) {
  cfg.validate();
  if (!(init_camera.scale > 0.0)) throw InvalidArgument("fit_frame: camera scale must be > 0");
  const std::size_t n = model.joint_count();
  const ParamLayout L{n};

  // Root translation duplicates the camera offset and is never optimized.
  std::vector<Eigen::Index> active;
  for (std::size_t c = 0; c < L.size(); ++c) {
    if (c >= L.root_translation() && c < L.root_translation() + 3) continue;
    if (c == L.scale() && !cfg.fit_scale) continue;
    active.push_back(static_cast<Eigen::Index>(c));
  }

  PoseParams pose = init_pose;
  Camera camera = init_camera;
  EnergyValue current = energy(model, pose, camera, observed, prev_pose, cfg);
  if (!std::isfinite(current.value)) throw InvalidArgument("fit_frame: non-finite energy at initialization");

  int iterations = 0;
  if (cfg.staged && cfg.max_iterations > 1) {
    // Arms and palm orientation first, with the fingers held rigid, so the
    // hands do not settle into a flipped orientation before the arms are
    // in place.
    const std::vector<bool> finger = finger_joints(model);
    std::vector<Eigen::Index> coarse;
    for (Eigen::Index c : active) {
      const auto cu = static_cast<std::size_t>(c);
      if (cu < 3 * n && finger[cu / 3]) continue;
      coarse.push_back(c);
    }
    const int budget = std::max(1, cfg.max_iterations / 4);
    iterations +=
        run_lm(model, observed, prev_pose, cfg, coarse, budget, pose, camera, current, true).iterations;
  }
  LmOutcome final_pass =
      run_lm(model, observed, prev_pose, cfg, active, cfg.max_iterations - iterations, pose, camera, current, false);
  iterations += final_pass.iterations;

  if (cfg.hand_flip_restarts && cfg.max_iterations > 1) {
    for (std::size_t root : hand_roots(model)) {
      PoseParams alt_pose = mirror_hand(model, pose, root);
      Camera alt_cam = camera;
      EnergyValue alt = energy(model, alt_pose, alt_cam, observed, prev_pose, cfg);
      const LmOutcome o =
          run_lm(model, observed, prev_pose, cfg, active, cfg.max_iterations, alt_pose, alt_cam, alt, false);
      iterations += o.iterations;
      if (alt.value < current.value) {
        pose = std::move(alt_pose);
        camera = alt_cam;
        current = std::move(alt);
        final_pass = o;
      }
    }
  }

  FitResult r;
  r.pose = pose;
  r.camera = camera;
  r.joints3d = forward_kinematics(model, pose);
  r.residual = current.value;
  r.reprojection_rmse = reprojection_rmse(r.joints3d, camera, observed);
  r.converged = final_pass.converged;
  r.iterations_used = iterations;
  return r;
}

FitResult fit_frame(const KinematicModel& model, const FramePose& observed,
                    const PoseParams& init_pose, const Camera& init_camera, const FitConfig& cfg,
                    const PoseParams* prev_pose) {
  check_sparse(observed);
  const auto obs = gather_model_keypoints(observed);
  FitResult r = fit_frame(model, obs, init_pose, init_camera, cfg, prev_pose);
  r.frame_index = observed.frame_index;
  r.timestamp = observed.timestamp;
  return r;
}

std::vector<FitResult> fit_sequence(const KinematicModel& model, const PoseSequence& seq,
                                    const FitConfig& cfg, const FilterParams& smooth,
                                    SequenceFitOptions options) {
  if (seq.schema != Schema::Sparse) throw InvalidArgument("fit_sequence: sequence must use the sparse schema");
  cfg.validate();
  smooth.validate();
  std::vector<FitResult> fits;
  fits.reserve(seq.frames.size());
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const FramePose& f = seq.frames[i];
    if (i == 0) {
      check_sparse(f);
      const PoseParams rest = PoseParams::rest(model);
      const Camera cam = estimate_camera(model, rest, gather_model_keypoints(f));
      FitConfig first = cfg;
      first.fit_scale = true;
      fits.push_back(fit_frame(model, f, rest, cam, first));
    } else {
      FitConfig later = cfg;
      later.fit_scale = false;
      later.staged = false;
      later.hand_flip_restarts = false;
      const FitResult& prev = fits.back();
      fits.push_back(fit_frame(model, f, prev.pose, prev.camera, later, &prev.pose));
    }
  }
  if (fits.empty()) return fits;

  // Share the first frame's camera across the sequence.
  const Camera shared = fits.front().camera;
  for (FitResult& r : fits) {
    const Vec2 shift = (r.camera.offset - shared.offset) / shared.scale;
    const Vec3 shift3(shift.x(), shift.y(), 0.0);
    r.pose.root_translation += shift3;
    for (Vec3& p : r.joints3d) p += shift3;
    r.camera = shared;
  }

  if (options.smooth) fits = smooth_fits(std::move(fits), smooth);
  return fits;
}

std::vector<FitResult> smooth_fits(std::vector<FitResult> fits, const FilterParams& smooth) {
  smooth.validate();
  if (fits.empty()) return fits;
  std::vector<std::vector<Vec3>> tracks;
  std::vector<double> times;
  tracks.reserve(fits.size());
  for (const FitResult& r : fits) {
    tracks.push_back(r.joints3d);
    times.push_back(r.timestamp);
  }
  FilterParams model_units = smooth;
  model_units.coordinate_scale = 1.0;
  tracks = filter_tracks(tracks, times, model_units);
  for (std::size_t i = 0; i < fits.size(); ++i) fits[i].joints3d = std::move(tracks[i]);
  return fits;
}

}  // namespace signpose
