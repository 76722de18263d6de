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

// Client for the external frame-by-frame image generation service.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "signpose/error.hpp"
#include "signpose/image.hpp"
#include "signpose/render.hpp"

namespace signpose {

enum class ConditioningMode { PoseOnly, CannyPose, CannyDepth };

std::string_view to_string(ConditioningMode mode);
// Accepts "pose_only", "canny_pose", "canny_depth".
ConditioningMode conditioning_mode_from_string(std::string_view name);

struct ControlWeights {
  double pose = 1.0;
  double canny = 1.0;
  double depth = 0.0;
};

struct ServiceConfig {
  std::string endpoint_url;
  std::optional<std::string> auth_token;
  int max_in_flight = 4;
  int retry_limit = 2;
  double per_request_timeout = 30.0;  // seconds
  double backoff_base = 0.5;          // seconds; doubles per retry

  void validate() const;
};

struct GenerationJob {
  std::vector<ConditioningFrame> frames;
  Image appearance_image;
  std::optional<std::string> text_prompt;
  std::optional<std::string> negative_prompt;
  std::uint64_t seed = 0;
  ConditioningMode mode = ConditioningMode::CannyPose;
  ControlWeights weights;
  // Reserved: one per frame when mode is CannyDepth. Nothing produces these
  // yet.
  std::vector<Image> depth_frames;

  // Frames non-empty, indices contiguous from 0, images consistent.
  void validate() const;
};

struct GenerationRequest {
  std::int64_t frame_index = 0;
  std::optional<Image> pose_image;
  std::optional<Image> canny_image;
  std::optional<Image> depth_image;
  Image appearance_image;
  std::optional<std::string> text_prompt;
  std::optional<std::string> negative_prompt;
  std::uint64_t seed = 0;
  ControlWeights weights;
  int width = 0;
  int height = 0;
};

// Weights of inputs the mode leaves out are forced to 0. Throws
// InvalidArgument for CannyDepth without a depth frame.
GenerationRequest build_request(const ConditioningFrame& frame, const GenerationJob& job);

// Wire-format JSON body. Identical requests give byte-identical bodies.
std::string request_body(const GenerationRequest& req);

class GenerationError : public Error {
 public:
  GenerationError(std::int64_t frame_index, const std::string& message);
  std::int64_t frame_index() const noexcept { return frame_index_; }

 private:
  std::int64_t frame_index_;
};

// POSTs to {endpoint}/generate. Transport errors and 5xx answers are retried
// up to retry_limit times after backoff_base * 2^k seconds.
Image generate_frame(const GenerationRequest& req, const ServiceConfig& cfg, int* attempts = nullptr);

struct FrameRecord {
  std::int64_t frame_index = 0;
  std::string status;  // "ok", "failed" or "not_attempted"
  std::string request_digest;
  std::string output_digest;  // sha256 of the returned PNG bytes
  int attempts = 0;
  std::string error;
};

struct GenerationManifest {
  std::uint64_t seed = 0;
  ConditioningMode mode = ConditioningMode::CannyPose;
  std::optional<std::string> text_prompt;
  std::optional<std::string> negative_prompt;
  ControlWeights weights;
  bool complete = false;
  std::vector<FrameRecord> frames;

  std::string to_json() const;
};

class JobAborted : public Error {
 public:
  JobAborted(const std::string& message, GenerationManifest partial);
  const GenerationManifest& manifest() const noexcept { return manifest_; }

 private:
  GenerationManifest manifest_;
};

struct GenerationOutcome {
  std::vector<Image> frames;  // frames[i] answers job.frames[i]
  GenerationManifest manifest;
};

// At most cfg.max_in_flight requests are outstanding. Any frame that still
// fails after its retries stops the job; JobAborted carries what was done.
GenerationOutcome generate_video(const GenerationJob& job, const ServiceConfig& cfg);

}  // namespace signpose
