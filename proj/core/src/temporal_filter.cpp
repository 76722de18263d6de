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

#include "signpose/temporal_filter.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "signpose/error.hpp"

namespace signpose {

void FilterParams::validate() const {
  if (!(f_min > 0.0) || !std::isfinite(f_min)) throw InvalidArgument("filter: f_min must be > 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("filter: beta must be >= 0");
  if (!(d_cutoff > 0.0) || !std::isfinite(d_cutoff)) throw InvalidArgument("filter: d_cutoff must be > 0");
  if (!(coordinate_scale > 0.0) || !std::isfinite(coordinate_scale)) {
    throw InvalidArgument("filter: coordinate_scale must be > 0");
  }
}

double smoothing_alpha(double cutoff_hz, double dt) {
  const double tau = 1.0 / (2.0 * std::numbers::pi * cutoff_hz);
  return 1.0 / (1.0 + tau / dt);
}

std::pair<OneEuroState, double> one_euro_step(const OneEuroState& state, double x, double t,
                                              const FilterParams& params) {
  if (!std::isfinite(x) || !std::isfinite(t)) throw InvalidArgument("one_euro_step: non-finite input");
  OneEuroState next;
  next.initialized = true;
  next.t_prev = t;
  if (!state.initialized) {
    next.x_hat_prev = x;
    next.dx_hat_prev = 0.0;
    return {next, x};
  }
  if (!(t > state.t_prev)) {
    throw InvalidArgument("one_euro_step: timestamp " + std::to_string(t) +
                          " not greater than previous " + std::to_string(state.t_prev));
  }
  const double dt = t - state.t_prev;
  const double dx = (x - state.x_hat_prev) / dt;
  const double a_d = smoothing_alpha(params.d_cutoff, dt);
  // Written as prev + a * (new - prev) so a constant signal stays bit-exact.
  const double dx_hat = state.dx_hat_prev + a_d * (dx - state.dx_hat_prev);
  // Speed in filter units; the recurrence on x itself is scale free.
  const double cutoff = params.f_min + params.beta * std::abs(dx_hat) / params.coordinate_scale;
  const double a = smoothing_alpha(cutoff, dt);
  const double y = state.x_hat_prev + a * (x - state.x_hat_prev);
  next.x_hat_prev = y;
  next.dx_hat_prev = dx_hat;
  return {next, y};
}

PoseSequence filter_sequence(const PoseSequence& seq, const FilterParams& params) {
  params.validate();
  PoseSequence out = seq;
  if (seq.frames.empty()) return out;
  for (KeypointGroup g : kAllGroups) {
    const std::size_t n = seq.frames.front().group(g).size();
    for (std::size_t k = 0; k < n; ++k) {
      OneEuroFilter fx(params), fy(params);
      for (FramePose& f : out.frames) {
        Keypoint2D& p = f.group(g)[k];
        if (p.confidence == 0.0) {
          throw InvalidArgument("filter_sequence: frame " + std::to_string(f.frame_index) + ": " +
                                std::string(to_string(g)) + "[" + std::to_string(k) +
                                "] is missing; interpolate gaps first");
        }
        p.x = fx(p.x, f.timestamp);
        p.y = fy(p.y, f.timestamp);
      }
    }
  }
  return out;
}

std::vector<std::vector<Eigen::Vector3d>> filter_tracks(
    const std::vector<std::vector<Eigen::Vector3d>>& tracks, const std::vector<double>& timestamps,
    const FilterParams& params) {
  params.validate();
  if (tracks.size() != timestamps.size()) throw InvalidArgument("filter_tracks: one timestamp per frame required");
  auto out = tracks;
  if (tracks.empty()) return out;
  const std::size_t points = tracks.front().size();
  for (const auto& frame : tracks) {
    if (frame.size() != points) throw InvalidArgument("filter_tracks: ragged track set");
  }
  for (std::size_t k = 0; k < points; ++k) {
    for (int c = 0; c < 3; ++c) {
      OneEuroFilter f(params);
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i][k][c] = f(out[i][k][c], timestamps[i]);
      }
    }
  }
  return out;
}

PoseSequence interpolate_gaps(const PoseSequence& seq, double conf_threshold) {
  PoseSequence out = seq;
  const std::size_t n_frames = seq.frames.size();
  for (KeypointGroup g : kAllGroups) {
    if (n_frames == 0) break;
    const std::size_t n = seq.frames.front().group(g).size();
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::size_t> anchors;
      for (std::size_t i = 0; i < n_frames; ++i) {
        if (seq.frames[i].group(g)[k].confidence >= conf_threshold) anchors.push_back(i);
      }
      if (anchors.empty()) {
        throw InvalidArgument("interpolate_gaps: " + std::string(to_string(g)) + "[" +
                              std::to_string(k) + "] is below confidence " +
                              std::to_string(conf_threshold) + " in every frame");
      }
      std::size_t next = 0;  // index into anchors of the first anchor >= i
      for (std::size_t i = 0; i < n_frames; ++i) {
        while (next < anchors.size() && anchors[next] < i) ++next;
        if (next < anchors.size() && anchors[next] == i) continue;
        Keypoint2D& p = out.frames[i].group(g)[k];
        if (next == 0) {
          p = seq.frames[anchors.front()].group(g)[k];
        } else if (next == anchors.size()) {
          p = seq.frames[anchors.back()].group(g)[k];
        } else {
          const FramePose& fa = seq.frames[anchors[next - 1]];
          const FramePose& fb = seq.frames[anchors[next]];
          const Keypoint2D& a = fa.group(g)[k];
          const Keypoint2D& b = fb.group(g)[k];
          const double w = (seq.frames[i].timestamp - fa.timestamp) / (fb.timestamp - fa.timestamp);
          p.x = a.x + w * (b.x - a.x);
          p.y = a.y + w * (b.y - a.y);
        }
        p.confidence = conf_threshold;
      }
    }
  }
  return out;
}

double jitter(const PoseSequence& seq) {
  if (seq.frames.size() < 2) throw InvalidArgument("jitter: need at least 2 frames");
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 1; i < seq.frames.size(); ++i) {
    for (KeypointGroup g : kAllGroups) {
      const auto& a = seq.frames[i - 1].group(g);
      const auto& b = seq.frames[i].group(g);
      for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
        total += std::hypot(b[k].x - a[k].x, b[k].y - a[k].y);
        ++count;
      }
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

namespace {

template <typename Vec>
double track_jitter(const std::vector<std::vector<Vec>>& tracks) {
  if (tracks.size() < 2) throw InvalidArgument("jitter: need at least 2 frames");
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 1; i < tracks.size(); ++i) {
    if (tracks[i].size() != tracks[i - 1].size()) throw InvalidArgument("jitter: ragged track set");
    for (std::size_t k = 0; k < tracks[i].size(); ++k) {
      total += (tracks[i][k] - tracks[i - 1][k]).norm();
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

}  // namespace

double jitter(const std::vector<std::vector<Eigen::Vector3d>>& tracks) { return track_jitter(tracks); }
double jitter(const std::vector<std::vector<Eigen::Vector2d>>& tracks) { return track_jitter(tracks); }

}  // namespace signpose
