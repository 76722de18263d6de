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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "signpose/error.hpp"
#include "signpose/synthetic.hpp"
#include "signpose/temporal_filter.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace signpose {
namespace {

using testing::reference_one_euro;

std::vector<double> run_filter(const std::vector<double>& xs, double fps, const FilterParams& p) {
  OneEuroFilter f(p);
  std::vector<double> ys;
  for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(f(xs[i], static_cast<double>(i) / fps));
  return ys;
}

TEST(OneEuroStep, StepInputMatchesFrozenOracle) {
  // Values from the reference recurrence above, evaluated once and frozen.
  const std::vector<double> expected = {0.0, 0.0, 0.5230011927983061, 0.8034636292468323, 0.9179457854177397};
  const std::vector<double> xs = {0, 0, 1, 1, 1};
  const std::vector<double> ref = reference_one_euro(xs, 30.0, 0.04, 1.0, 1.0);
  const std::vector<double> got = run_filter(xs, 30.0, FilterParams{});
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(ref[i], expected[i], 1e-12) << i;
    EXPECT_NEAR(got[i], expected[i], 1e-12) << i;
  }
}

TEST(OneEuroStep, MatchesReferenceOnRandomSignals) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 3.0);
  for (double beta : {0.0, 0.5, 1.0, 7.0}) {
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(10.0 * std::sin(0.05 * i) + n(rng));
    FilterParams p;
    p.beta = beta;
    p.f_min = 0.3;
    const auto ref = reference_one_euro(xs, 60.0, 0.3, beta, 1.0);
    const auto got = run_filter(xs, 60.0, p);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-9 * (1.0 + std::abs(ref[i])));
  }
}

TEST(OneEuroStep, ConstantInputIsExactFixedPoint) {
  const std::vector<double> xs(50, 3.75);
  for (double y : run_filter(xs, 30.0, FilterParams{})) EXPECT_EQ(y, 3.75);
}

TEST(OneEuroStep, FirstSamplePassesThrough) {
  auto [state, y] = one_euro_step(OneEuroState{}, 7.5, 12.0, FilterParams{});
  EXPECT_EQ(y, 7.5);
  EXPECT_TRUE(state.initialized);
  EXPECT_EQ(state.dx_hat_prev, 0.0);
  EXPECT_EQ(state.t_prev, 12.0);
}

TEST(OneEuroStep, Errors) {
  const FilterParams p;
  auto [s, y] = one_euro_step(OneEuroState{}, 1.0, 1.0, p);
  (void)y;
  EXPECT_THROW(one_euro_step(s, 1.0, 1.0, p), InvalidArgument);
  EXPECT_THROW(one_euro_step(s, 1.0, 0.5, p), InvalidArgument);
  EXPECT_THROW(one_euro_step(s, std::nan(""), 2.0, p), InvalidArgument);
  EXPECT_THROW(one_euro_step(s, std::numeric_limits<double>::infinity(), 2.0, p), InvalidArgument);
}

TEST(FilterParams, Validation) {
  FilterParams p;
  p.f_min = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.d_cutoff = -1.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = {};
  p.beta = -0.1;
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(OneEuroStep, CoordinateScaleFiltersNormalizedValues) {
  FilterParams scaled;
  scaled.coordinate_scale = 512.0;
  const std::vector<double> xs = {0, 3, 1, 8, 5, 4};
  std::vector<double> normalized;
  for (double x : xs) normalized.push_back(x / 512.0);
  const auto a = run_filter(xs, 30.0, scaled);
  const auto b = reference_one_euro(normalized, 30.0, 0.04, 1.0, 1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(a[i], 512.0 * b[i], 1e-9);
}

TEST(OneEuroStep, Causality) {
  std::vector<double> xs;
  for (int i = 0; i < 40; ++i) xs.push_back(std::cos(0.3 * i) * i);
  const auto full = run_filter(xs, 30.0, FilterParams{});
  const std::vector<double> prefix(xs.begin(), xs.begin() + 17);
  const auto part = run_filter(prefix, 30.0, FilterParams{});
  for (std::size_t i = 0; i < part.size(); ++i) EXPECT_EQ(part[i], full[i]);
}

TEST(FilterSequence, StaticSequenceUnchanged) {
  PoseSequence s = testing::sparse_sequence(10);
  for (FramePose& f : s.frames) {
    const double t = f.timestamp;
    const auto idx = f.frame_index;
    f = s.frames[0];
    f.timestamp = t;
    f.frame_index = idx;
  }
  EXPECT_EQ(filter_sequence(s, FilterParams{}), s);
}

TEST(FilterSequence, OneFrameUnchanged) {
  const PoseSequence s = testing::sparse_sequence(1);
  EXPECT_EQ(filter_sequence(s, FilterParams{}), s);
}

TEST(FilterSequence, ChannelsFilteredIndependently) {
  const PoseSequence s = testing::sparse_sequence(12);
  FilterParams p;
  p.coordinate_scale = 100.0;
  const PoseSequence out = filter_sequence(s, p);
  std::vector<double> xs;
  for (const FramePose& f : s.frames) xs.push_back(f.left_hand[3].y);
  const auto want = run_filter(xs, 30.0, p);
  for (std::size_t i = 0; i < s.frames.size(); ++i) {
    EXPECT_EQ(out.frames[i].left_hand[3].y, want[i]);
    EXPECT_EQ(out.frames[i].timestamp, s.frames[i].timestamp);
    EXPECT_EQ(out.frames[i].left_hand[3].confidence, s.frames[i].left_hand[3].confidence);
  }
}

TEST(FilterSequence, RejectsGaps) {
  PoseSequence s = testing::sparse_sequence(3);
  s.frames[1].body[0].confidence = 0.0;
  EXPECT_THROW(filter_sequence(s, FilterParams{}), InvalidArgument);
}

TEST(FilterSequence, SinusoidJitterReduction) {
  const SinusoidFixture fx = sinusoid_fixture();
  FilterParams p;
  p.coordinate_scale = 512.0;
  const double raw = jitter(fx.noisy);
  const double filtered = jitter(filter_sequence(fx.noisy, p));
  EXPECT_LE(filtered, 0.6 * raw);
}

PoseSequence single_slot_sequence(const std::vector<Keypoint2D>& track) {
  PoseSequence s = testing::sparse_sequence(track.size());
  for (std::size_t i = 0; i < track.size(); ++i) s.frames[i].body[2] = track[i];
  return s;
}

TEST(InterpolateGaps, Midpoint) {
  const PoseSequence s = single_slot_sequence({{0, 0, 1}, {99, 99, 0.1}, {2, 4, 1}});
  const PoseSequence out = interpolate_gaps(s, 0.5);
  EXPECT_EQ(out.frames[1].body[2], (Keypoint2D{1, 2, 0.5}));
}

TEST(InterpolateGaps, EquallySpaced) {
  const PoseSequence s = single_slot_sequence({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}, {3, 3, 1}});
  const PoseSequence out = interpolate_gaps(s, 0.5);
  EXPECT_DOUBLE_EQ(out.frames[1].body[2].x, 1.0);
  EXPECT_DOUBLE_EQ(out.frames[1].body[2].y, 1.0);
  EXPECT_DOUBLE_EQ(out.frames[2].body[2].x, 2.0);
  EXPECT_DOUBLE_EQ(out.frames[2].body[2].y, 2.0);
}

TEST(InterpolateGaps, LeadingAndTrailingCopyNearest) {
  const PoseSequence s = single_slot_sequence({{0, 0, 0}, {5, 5, 1}, {7, 1, 0.9}, {0, 0, 0.2}});
  const PoseSequence out = interpolate_gaps(s, 0.5);
  EXPECT_EQ(out.frames[0].body[2], (Keypoint2D{5, 5, 0.5}));
  EXPECT_EQ(out.frames[3].body[2], (Keypoint2D{7, 1, 0.5}));
}

TEST(InterpolateGaps, ConfidentKeypointsUntouched) {
  PoseSequence s = testing::sparse_sequence(6);
  s.frames[2].face[4].confidence = 0.0;
  s.frames[3].right_hand[0].confidence = 0.3;
  const PoseSequence out = interpolate_gaps(s, 0.5);
  for (std::size_t i = 0; i < s.frames.size(); ++i) {
    for (KeypointGroup g : kAllGroups) {
      for (std::size_t k = 0; k < s.frames[i].group(g).size(); ++k) {
        const Keypoint2D& in = s.frames[i].group(g)[k];
        if (in.confidence >= 0.5) {
          EXPECT_EQ(out.frames[i].group(g)[k], in);
        }
      }
    }
  }
}

TEST(InterpolateGaps, NeverConfidentSlotIsAnError) {
  PoseSequence s = testing::sparse_sequence(3);
  for (FramePose& f : s.frames) f.left_hand[9].confidence = 0.1;
  EXPECT_THROW(interpolate_gaps(s, 0.5), InvalidArgument);
}

TEST(Jitter, StaticIsZero) {
  PoseSequence s = testing::sparse_sequence(4);
  for (FramePose& f : s.frames) {
    f.face = s.frames[0].face;
    f.body = s.frames[0].body;
    f.left_hand = s.frames[0].left_hand;
    f.right_hand = s.frames[0].right_hand;
  }
  EXPECT_EQ(jitter(s), 0.0);
}

TEST(Jitter, SingleKeypointThreeFourFive) {
  EXPECT_DOUBLE_EQ(jitter(std::vector<std::vector<Eigen::Vector2d>>{{{0, 0}}, {{3, 4}}}), 5.0);
}

TEST(Jitter, MeanOverKeypoints) {
  EXPECT_DOUBLE_EQ(jitter(std::vector<std::vector<Eigen::Vector2d>>{{{0, 0}, {0, 0}}, {{3, 0}, {0, 4}}}), 3.5);
}

TEST(Jitter, SequenceVersionAveragesAllKeypoints) {
  PoseSequence s = testing::sparse_sequence(2);
  s.frames[1] = s.frames[0];
  s.frames[1].frame_index = 1;
  s.frames[1].timestamp = 1.0;
  s.frames[1].body[0].x += 181.0;  // one of 137 keypoints moves
  EXPECT_DOUBLE_EQ(jitter(s), 181.0 / 137.0);
}

TEST(Jitter, NeedsTwoFrames) { EXPECT_THROW(jitter(testing::sparse_sequence(1)), InvalidArgument); }

TEST(FilterTracks, SmoothsThreeDimensionalTracks) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 0.01);
  std::vector<std::vector<Eigen::Vector3d>> tracks;
  std::vector<double> ts;
  for (int i = 0; i < 120; ++i) {
    tracks.push_back({Eigen::Vector3d(n(rng), n(rng), n(rng))});
    ts.push_back(i / 30.0);
  }
  const auto out = filter_tracks(tracks, ts, FilterParams{});
  EXPECT_LT(jitter(out), jitter(tracks));
}

}  // namespace
}  // namespace signpose
