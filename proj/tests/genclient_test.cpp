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

#include "json.hpp"
#include "signpose/error.hpp"
#include "signpose/genclient.hpp"
#include "signpose/mock_service.hpp"
#include "test_support.hpp"

namespace signpose {
namespace {

using testing::constant_image;
using testing::noise_image;

ConditioningFrame frame(std::int64_t index, int w = 32, int h = 24) {
  ConditioningFrame f;
  f.frame_index = index;
  f.pose_image = noise_image(w, h, 3, 100 + static_cast<std::uint64_t>(index));
  f.canny_image = noise_image(w, h, 1, 200 + static_cast<std::uint64_t>(index));
  return f;
}

GenerationJob job(std::size_t n, int w = 32, int h = 24) {
  GenerationJob j;
  for (std::size_t i = 0; i < n; ++i) j.frames.push_back(frame(static_cast<std::int64_t>(i), w, h));
  j.appearance_image = noise_image(48, 40, 3, 7);
  j.text_prompt = "a signer";
  j.seed = 42;
  return j;
}

ServiceConfig config_for(const MockService& mock) {
  ServiceConfig c;
  c.endpoint_url = mock.url();
  c.backoff_base = 0.01;
  c.per_request_timeout = 10.0;
  return c;
}

TEST(ConditioningMode, NamesRoundTrip) {
  for (auto m : {ConditioningMode::PoseOnly, ConditioningMode::CannyPose, ConditioningMode::CannyDepth}) {
    EXPECT_EQ(conditioning_mode_from_string(to_string(m)), m);
  }
  EXPECT_THROW(conditioning_mode_from_string("depth"), InvalidArgument);
}

TEST(BuildRequest, SeedIsSharedAcrossFrames) {
  const GenerationJob j = job(5);
  for (const auto& f : j.frames) {
    const GenerationRequest r = build_request(f, j);
    EXPECT_EQ(r.seed, 42u);
    EXPECT_EQ(r.frame_index, f.frame_index);
    EXPECT_EQ(r.width, 32);
    EXPECT_EQ(r.height, 24);
  }
}

TEST(BuildRequest, PoseOnlyOmitsCanny) {
  GenerationJob j = job(1);
  j.mode = ConditioningMode::PoseOnly;
  const GenerationRequest r = build_request(j.frames[0], j);
  EXPECT_TRUE(r.pose_image.has_value());
  EXPECT_FALSE(r.canny_image.has_value());
  EXPECT_FALSE(r.depth_image.has_value());
  EXPECT_EQ(r.weights.canny, 0.0);
  const auto doc = nlohmann::json::parse(request_body(r));
  EXPECT_TRUE(doc.at("control").at("canny").is_null());
  EXPECT_EQ(doc.at("control").at("weights").at("canny"), 0.0);
}

TEST(BuildRequest, CannyPoseCarriesBoth) {
  const GenerationJob j = job(1);
  const GenerationRequest r = build_request(j.frames[0], j);
  ASSERT_TRUE(r.pose_image && r.canny_image);
  EXPECT_EQ(*r.pose_image, j.frames[0].pose_image);
  EXPECT_EQ(*r.canny_image, j.frames[0].canny_image);
  EXPECT_EQ(r.weights.depth, 0.0);
}

TEST(BuildRequest, CannyDepthNeedsDepth) {
  GenerationJob j = job(2);
  j.mode = ConditioningMode::CannyDepth;
  EXPECT_THROW(build_request(j.frames[0], j), InvalidArgument);
  j.depth_frames = {constant_image(32, 24, 1, 9), constant_image(32, 24, 1, 10)};
  const GenerationRequest r = build_request(j.frames[1], j);
  ASSERT_TRUE(r.depth_image.has_value());
  EXPECT_EQ(*r.depth_image, j.depth_frames[1]);
  EXPECT_FALSE(r.pose_image.has_value());
}

TEST(GenerationJob, Validation) {
  GenerationJob empty = job(0);
  EXPECT_THROW(empty.validate(), InvalidArgument);
  GenerationJob gap = job(3);
  gap.frames[2].frame_index = 5;
  EXPECT_THROW(gap.validate(), InvalidArgument);
  GenerationJob no_app = job(1);
  no_app.appearance_image = Image();
  EXPECT_THROW(no_app.validate(), InvalidArgument);
  GenerationJob neg = job(1);
  neg.weights.pose = -1;
  EXPECT_THROW(neg.validate(), InvalidArgument);
  EXPECT_NO_THROW(job(3).validate());
}

TEST(ServiceConfig, Validation) {
  ServiceConfig c;
  c.endpoint_url = "http://127.0.0.1:8765";
  EXPECT_NO_THROW(c.validate());
  ServiceConfig bad = c;
  bad.endpoint_url = "localhost:8765";
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = c;
  bad.max_in_flight = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = c;
  bad.retry_limit = -1;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  bad = c;
  bad.per_request_timeout = 0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
}

TEST(RequestBody, Deterministic) {
  const GenerationJob j = job(2);
  EXPECT_EQ(request_body(build_request(j.frames[1], j)), request_body(build_request(j.frames[1], j)));
  EXPECT_NE(request_body(build_request(j.frames[0], j)), request_body(build_request(j.frames[1], j)));
}

TEST(GenerateFrame, MockEchoBlend) {
  MockService mock;
  mock.start();
  GenerationJob j = job(1);
  j.appearance_image = noise_image(32, 24, 3, 5);
  const GenerationRequest r = build_request(j.frames[0], j);
  int attempts = 0;
  const Image out = generate_frame(r, config_for(mock), &attempts);
  EXPECT_EQ(attempts, 1);
  ASSERT_EQ(out.width, 32);
  ASSERT_EQ(out.height, 24);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    EXPECT_EQ(out.data[i], (j.frames[0].pose_image.data[i] + j.appearance_image.data[i] + 1) >> 1);
  }
}

TEST(GenerateFrame, WrongSizeIsGenerationError) {
  MockServiceOptions o;
  o.wrong_size = true;
  MockService mock(o);
  mock.start();
  const GenerationJob j = job(4);
  try {
    generate_frame(build_request(j.frames[3], j), config_for(mock));
    FAIL() << "expected GenerationError";
  } catch (const GenerationError& e) {
    EXPECT_EQ(e.frame_index(), 3);
    EXPECT_NE(std::string(e.what()).find("size"), std::string::npos);
  }
}

TEST(GenerateFrame, RetriesTransientFailures) {
  MockServiceOptions o;
  o.fail_first = 2;
  MockService mock(o);
  mock.start();
  ServiceConfig c = config_for(mock);
  c.retry_limit = 2;
  const GenerationJob j = job(1);
  int attempts = 0;
  EXPECT_NO_THROW(generate_frame(build_request(j.frames[0], j), c, &attempts));
  EXPECT_EQ(attempts, 3);
  EXPECT_EQ(mock.stats().failures_injected, 2);
}

TEST(GenerateFrame, GivesUpAfterRetryLimit) {
  MockServiceOptions o;
  o.fail_first = 3;
  MockService mock(o);
  mock.start();
  ServiceConfig c = config_for(mock);
  c.retry_limit = 2;
  const GenerationJob j = job(1);
  EXPECT_THROW(generate_frame(build_request(j.frames[0], j), c), GenerationError);
}

TEST(GenerateFrame, UnreachableService) {
  int port = 0;
  {
    MockService probe;
    probe.start();
    port = probe.port();
  }
  ServiceConfig c;
  c.endpoint_url = "http://127.0.0.1:" + std::to_string(port);
  c.retry_limit = 1;
  c.backoff_base = 0.0;
  c.per_request_timeout = 2.0;
  const GenerationJob j = job(1);
  EXPECT_THROW(generate_frame(build_request(j.frames[0], j), c), GenerationError);
}

TEST(GenerateVideo, OrderedFramesAndManifest) {
  MockService mock;
  mock.start();
  const GenerationJob j = job(30);
  const GenerationOutcome out = generate_video(j, config_for(mock));
  ASSERT_EQ(out.frames.size(), 30u);
  ASSERT_EQ(out.manifest.frames.size(), 30u);
  EXPECT_TRUE(out.manifest.complete);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_EQ(out.manifest.frames[i].frame_index, static_cast<std::int64_t>(i));
    EXPECT_EQ(out.manifest.frames[i].status, "ok");
    EXPECT_EQ(out.manifest.frames[i].attempts, 1);
    EXPECT_EQ(out.frames[i], generate_frame(build_request(j.frames[i], j), config_for(mock)));
  }
  const auto doc = nlohmann::json::parse(out.manifest.to_json());
  EXPECT_EQ(doc.at("seed"), 42);
  EXPECT_EQ(doc.at("mode"), "canny_pose");
  EXPECT_EQ(doc.at("frames").size(), 30u);
  EXPECT_EQ(doc.at("complete"), true);
}

TEST(GenerateVideo, RespectsMaxInFlight) {
  MockServiceOptions o;
  o.delay_seconds = 0.05;
  MockService mock(o);
  mock.start();
  ServiceConfig c = config_for(mock);
  c.max_in_flight = 4;
  generate_video(job(16), c);
  EXPECT_LE(mock.stats().max_in_flight, 4);
  EXPECT_GE(mock.stats().max_in_flight, 1);
  EXPECT_EQ(mock.stats().requests, 16);
}

TEST(GenerateVideo, SerialWhenMaxInFlightIsOne) {
  MockServiceOptions o;
  o.delay_seconds = 0.01;
  MockService mock(o);
  mock.start();
  ServiceConfig c = config_for(mock);
  c.max_in_flight = 1;
  generate_video(job(6), c);
  EXPECT_EQ(mock.stats().max_in_flight, 1);
}

TEST(GenerateVideo, RerunIsBitIdentical) {
  MockService mock;
  mock.start();
  const GenerationJob j = job(8);
  const GenerationOutcome a = generate_video(j, config_for(mock));
  const GenerationOutcome b = generate_video(j, config_for(mock));
  EXPECT_EQ(a.frames, b.frames);
  EXPECT_EQ(a.manifest.to_json(), b.manifest.to_json());
}

TEST(GenerateVideo, AbortKeepsPartialManifest) {
  MockServiceOptions o;
  o.fail_first = 100;
  MockService mock(o);
  mock.start();
  ServiceConfig c = config_for(mock);
  c.retry_limit = 1;
  c.max_in_flight = 1;
  try {
    generate_video(job(5), c);
    FAIL() << "expected JobAborted";
  } catch (const JobAborted& e) {
    const GenerationManifest& m = e.manifest();
    EXPECT_FALSE(m.complete);
    ASSERT_EQ(m.frames.size(), 5u);
    EXPECT_EQ(m.frames[0].status, "failed");
    EXPECT_EQ(m.frames[0].attempts, 2);
    EXPECT_FALSE(m.frames[0].error.empty());
    for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(m.frames[i].status, "not_attempted");
  }
}

TEST(GenerateVideo, CannyDepthWithoutDepthFailsBeforeTraffic) {
  MockService mock;
  mock.start();
  GenerationJob j = job(3);
  j.mode = ConditioningMode::CannyDepth;
  EXPECT_THROW(generate_video(j, config_for(mock)), InvalidArgument);
  EXPECT_EQ(mock.stats().requests, 0);
}

}  // namespace
}  // namespace signpose
