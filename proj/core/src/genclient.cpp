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

#include "signpose/genclient.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "http_util.hpp"
#include "httplib.h"
#include "json.hpp"
#include "signpose/codec.hpp"

namespace signpose {

using nlohmann::json;

std::string_view to_string(ConditioningMode mode) {
  switch (mode) {
    case ConditioningMode::PoseOnly: return "pose_only";
    case ConditioningMode::CannyPose: return "canny_pose";
    case ConditioningMode::CannyDepth: return "canny_depth";
  }
  return "canny_pose";
}

ConditioningMode conditioning_mode_from_string(std::string_view name) {
  if (name == "pose_only") return ConditioningMode::PoseOnly;
  if (name == "canny_pose") return ConditioningMode::CannyPose;
  if (name == "canny_depth") return ConditioningMode::CannyDepth;
  throw InvalidArgument("unknown conditioning mode '" + std::string(name) +
                        "' (expected pose_only, canny_pose or canny_depth)");
}

void ServiceConfig::validate() const {
  detail::split_http_url(endpoint_url);
  if (max_in_flight < 1) throw InvalidArgument("service: max_in_flight must be >= 1");
  if (retry_limit < 0) throw InvalidArgument("service: retry_limit must be >= 0");
  if (!(per_request_timeout > 0.0)) throw InvalidArgument("service: per_request_timeout must be > 0");
  if (!(backoff_base >= 0.0)) throw InvalidArgument("service: backoff_base must be >= 0");
}

void GenerationJob::validate() const {
  if (frames.empty()) throw InvalidArgument("job: no frames");
  appearance_image.validate();
  if (appearance_image.empty()) throw InvalidArgument("job: empty appearance image");
  if (weights.pose < 0.0 || weights.canny < 0.0 || weights.depth < 0.0) {
    throw InvalidArgument("job: control weights must be >= 0");
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].frame_index != static_cast<std::int64_t>(i)) {
      throw InvalidArgument("job: frame indices must be contiguous from 0 (slot " + std::to_string(i) + " holds " +
                            std::to_string(frames[i].frame_index) + ")");
    }
  }
}

GenerationError::GenerationError(std::int64_t frame_index, const std::string& message)
    : Error("frame " + std::to_string(frame_index) + ": " + message), frame_index_(frame_index) {}

JobAborted::JobAborted(const std::string& message, GenerationManifest partial)
    : Error(message), manifest_(std::move(partial)) {}

GenerationRequest build_request(const ConditioningFrame& frame, const GenerationJob& job) {
  GenerationRequest r;
  r.frame_index = frame.frame_index;
  r.appearance_image = job.appearance_image;
  r.text_prompt = job.text_prompt;
  r.negative_prompt = job.negative_prompt;
  r.seed = job.seed;
  r.weights = job.weights;
  r.width = frame.pose_image.width;
  r.height = frame.pose_image.height;
  switch (job.mode) {
    case ConditioningMode::PoseOnly:
      r.pose_image = frame.pose_image;
      r.weights.canny = 0.0;
      r.weights.depth = 0.0;
      break;
    case ConditioningMode::CannyPose:
      r.pose_image = frame.pose_image;
      r.canny_image = frame.canny_image;
      r.weights.depth = 0.0;
      break;
    case ConditioningMode::CannyDepth: {
      const auto slot = static_cast<std::size_t>(frame.frame_index);
      if (frame.frame_index < 0 || slot >= job.depth_frames.size()) {
        throw InvalidArgument("frame " + std::to_string(frame.frame_index) +
                              ": canny_depth conditioning requires a depth image, none available");
      }
      r.canny_image = frame.canny_image;
      r.depth_image = job.depth_frames[slot];
      r.weights.pose = 0.0;
      break;
    }
  }
  return r;
}

std::string request_body(const GenerationRequest& req) {
  const auto png64 = [](const std::optional<Image>& img) -> json {
    return img ? json(base64_encode(encode_png(*img))) : json(nullptr);
  };
  const auto text = [](const std::optional<std::string>& s) -> json { return s ? json(*s) : json(nullptr); };
  json doc = {{"frame_index", req.frame_index},
              {"seed", req.seed},
              {"prompt", text(req.text_prompt)},
              {"negative_prompt", text(req.negative_prompt)},
              {"control",
               {{"pose", png64(req.pose_image)},
                {"canny", png64(req.canny_image)},
                {"depth", png64(req.depth_image)},
                {"weights", {{"pose", req.weights.pose}, {"canny", req.weights.canny}, {"depth", req.weights.depth}}}}},
              {"appearance", base64_encode(encode_png(req.appearance_image))},
              {"width", req.width},
              {"height", req.height}};
  return doc.dump();
}

namespace {

struct Reply {
  Image image;
  std::string png_digest;
};

Reply post_with_retries(std::int64_t frame_index, const std::string& body, int width, int height,
                        const ServiceConfig& cfg, int* attempts) {
  cfg.validate();
  const detail::HttpTarget target = detail::split_http_url(cfg.endpoint_url);
  const std::string path = detail::join_path(target.path, "generate");
  httplib::Client client(target.origin);
  const auto secs = static_cast<time_t>(cfg.per_request_timeout);
  const auto usecs = static_cast<time_t>((cfg.per_request_timeout - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  httplib::Headers headers;
  if (cfg.auth_token) headers.emplace("Authorization", "Bearer " + *cfg.auth_token);

  std::string last_error;
  for (int attempt = 0; attempt <= cfg.retry_limit; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(cfg.backoff_base * std::ldexp(1.0, attempt - 1)));
    }
    if (attempts) *attempts = attempt + 1;
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server error HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw GenerationError(frame_index, "request rejected with HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    std::string png;
    try {
      const json doc = json::parse(res->body);
      if (doc.at("frame_index").get<std::int64_t>() != frame_index) {
        throw GenerationError(frame_index, "response answers frame " + doc.at("frame_index").dump());
      }
      png = base64_decode(doc.at("image").get<std::string>());
    } catch (const json::exception& e) {
      throw GenerationError(frame_index, std::string("malformed response: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw GenerationError(frame_index, std::string("malformed response: ") + e.what());
    }
    Image img;
    try {
      img = decode_png(png);
    } catch (const Error& e) {
      throw GenerationError(frame_index, std::string("malformed response image: ") + e.what());
    }
    if (img.width != width || img.height != height) {
      throw GenerationError(frame_index, "size mismatch: expected " + std::to_string(width) + "x" +
                                             std::to_string(height) + ", got " + std::to_string(img.width) + "x" +
                                             std::to_string(img.height));
    }
    return {std::move(img), sha256_hex(png)};
  }
  throw GenerationError(frame_index, "giving up after " + std::to_string(cfg.retry_limit + 1) +
                                         " attempts: " + last_error);
}

json weights_json(const ControlWeights& w) { return {{"pose", w.pose}, {"canny", w.canny}, {"depth", w.depth}}; }

}  // namespace

Image generate_frame(const GenerationRequest& req, const ServiceConfig& cfg, int* attempts) {
  return post_with_retries(req.frame_index, request_body(req), req.width, req.height, cfg, attempts).image;
}

std::string GenerationManifest::to_json() const {
  json frames_json = json::array();
  for (const FrameRecord& r : frames) {
    frames_json.push_back({{"index", r.frame_index},
                           {"status", r.status},
                           {"request_sha256", r.request_digest},
                           {"output_sha256", r.output_digest},
                           {"attempts", r.attempts},
                           {"error", r.error}});
  }
  json doc = {{"seed", seed},
              {"mode", std::string(signpose::to_string(mode))},
              {"prompt", text_prompt ? json(*text_prompt) : json(nullptr)},
              {"negative_prompt", negative_prompt ? json(*negative_prompt) : json(nullptr)},
              {"weights", weights_json(weights)},
              {"complete", complete},
              {"frames", frames_json}};
  return doc.dump(2) + "\n";
}

GenerationOutcome generate_video(const GenerationJob& job, const ServiceConfig& cfg) {
  job.validate();
  cfg.validate();
  const std::size_t n = job.frames.size();

  GenerationOutcome out;
  out.frames.resize(n);
  GenerationManifest& m = out.manifest;
  m.seed = job.seed;
  m.mode = job.mode;
  m.text_prompt = job.text_prompt;
  m.negative_prompt = job.negative_prompt;
  m.weights = job.weights;
  m.frames.resize(n);

  // Requests are built up front so a build-time error fails before any
  // network traffic.
  std::vector<GenerationRequest> requests;
  requests.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    requests.push_back(build_request(job.frames[i], job));
    m.frames[i].frame_index = static_cast<std::int64_t>(i);
    m.frames[i].status = "not_attempted";
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex error_mutex;
  std::string first_error;

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      FrameRecord& rec = m.frames[i];
      const GenerationRequest& req = requests[i];
      const std::string body = request_body(req);
      rec.request_digest = sha256_hex(body);
      try {
        Reply reply = post_with_retries(req.frame_index, body, req.width, req.height, cfg, &rec.attempts);
        out.frames[i] = std::move(reply.image);
        rec.output_digest = std::move(reply.png_digest);
        rec.status = "ok";
      } catch (const std::exception& e) {
        rec.status = "failed";
        rec.error = e.what();
        std::lock_guard lock(error_mutex);
        if (first_error.empty()) first_error = e.what();
        abort.store(true);
        return;
      }
    }
  };

  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.max_in_flight), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  if (abort.load()) {
    m.complete = false;
    throw JobAborted("generation aborted: " + first_error, m);
  }
  m.complete = true;
  return out;
}

}  // namespace signpose
