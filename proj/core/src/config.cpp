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

#include <filesystem>

#include "json.hpp"
#include "signpose/pipeline.hpp"

namespace signpose {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json nullable(const std::string& s) { return s.empty() ? json(nullptr) : json(s); }
json nullable(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }
json rgb(const Rgb& c) { return json::array({c.r, c.g, c.b}); }

json to_doc(const PipelineConfig& c) {
  return {
      {"paths",
       {{"input", nullable(c.input_path)},
        {"mapping", nullable(c.mapping_path)},
        {"model", nullable(c.model_path)},
        {"appearance", nullable(c.appearance_path)},
        {"source_frames", nullable(c.source_frames_dir)},
        {"output_dir", nullable(c.output_dir)}}},
      {"filter",
       {{"f_min", c.filter.f_min},
        {"beta", c.filter.beta},
        {"d_cutoff", c.filter.d_cutoff},
        {"coordinate_scale", c.filter.coordinate_scale},
        {"interpolate_threshold", c.interpolate_threshold}}},
      {"fit",
       {{"robust_delta", c.fit.robust_delta},
        {"lambda_prior", c.fit.lambda_prior},
        {"lambda_temporal", c.fit.lambda_temporal},
        {"max_iterations", c.fit.max_iterations},
        {"gradient_tolerance", c.fit.gradient_tolerance},
        {"function_tolerance", c.fit.function_tolerance},
        {"lm_damping_init", c.fit.lm_damping_init},
        {"staged", c.fit.staged},
        {"hand_flip_restarts", c.fit.hand_flip_restarts},
        {"smooth", c.smooth_fits}}},
      {"render",
       {{"width", c.canvas_width},
        {"height", c.canvas_height},
        {"line_width", c.style.line_width},
        {"keypoint_radius", c.style.keypoint_radius},
        {"background", rgb(c.style.background)},
        {"bone_colors",
         {{"body", rgb(c.style.bone_colors[0])},
          {"left_hand", rgb(c.style.bone_colors[1])},
          {"right_hand", rgb(c.style.bone_colors[2])},
          {"face", rgb(c.style.bone_colors[3])}}},
        {"canny", {{"sigma", c.canny.sigma}, {"low", c.canny.low}, {"high", c.canny.high}}}}},
      {"generate",
       {{"mode", std::string(to_string(c.mode))},
        {"seed", c.seed},
        {"prompt", nullable(c.text_prompt)},
        {"negative_prompt", nullable(c.negative_prompt)},
        {"weights", {{"pose", c.weights.pose}, {"canny", c.weights.canny}, {"depth", c.weights.depth}}},
        {"service",
         {{"endpoint_url", c.service.endpoint_url},
          {"auth_token", nullable(c.service.auth_token)},
          {"max_in_flight", c.service.max_in_flight},
          {"retry_limit", c.service.retry_limit},
          {"per_request_timeout", c.service.per_request_timeout},
          {"backoff_base", c.service.backoff_base}}}}},
      {"evaluate",
       {{"provider", c.metrics.provider},
        {"provider_url", nullable(c.metrics.provider_url)},
        {"d_s", c.metrics.d_s},
        {"d_t", c.metrics.d_t}}},
  };
}

PipelineConfig defaults() {
  PipelineConfig c;
  c.filter.coordinate_scale = 512.0;
  c.service.endpoint_url = "http://127.0.0.1:8765";
  return c;
}

// Overlays `src` onto `dst`, which holds the complete default document.
void merge(json& dst, const json& src, const std::string& where) {
  if (!src.is_object()) throw InvalidArgument("config: '" + where + "' must be an object");
  for (const auto& [key, value] : src.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!dst.contains(key)) throw InvalidArgument("config: unknown key '" + path + "'");
    json& slot = dst[key];
    if (slot.is_object()) {
      merge(slot, value, path);
    } else {
      slot = value;
    }
  }
}

void apply_override(json& doc, const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InvalidArgument("config override '" + spec + "': expected key=value");
  }
  const std::string key = spec.substr(0, eq);
  const std::string text = spec.substr(eq + 1);
  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(part)) {
      throw InvalidArgument("config override '" + spec + "': unknown key '" + key + "'");
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  if (node->is_object() && !value.is_object()) {
    throw InvalidArgument("config override '" + spec + "': '" + key + "' is a section");
  }
  *node = value;
}

template <typename T>
T get(const json& doc, const std::string& path) {
  const json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = path.find('.', start);
    node = &node->at(path.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  try {
    return node->get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument("config: key '" + path + "': " + e.what());
  }
}

std::string get_path(const json& doc, const std::string& key, const std::string& base_dir) {
  const json& v = doc.at("paths").at(key);
  if (v.is_null()) return {};
  if (!v.is_string()) throw InvalidArgument("config: key 'paths." + key + "' must be a string or null");
  const std::string s = v.get<std::string>();
  if (s.empty()) return {};
  fs::path p(s);
  if (p.is_relative()) p = fs::path(base_dir) / p;
  return p.lexically_normal().string();
}

std::optional<std::string> get_optional(const json& doc, const std::string& section, const std::string& key) {
  const json& v = doc.at(section).at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) throw InvalidArgument("config: key '" + section + "." + key + "' must be a string or null");
  return v.get<std::string>();
}

Rgb get_rgb(const json& doc, const std::string& path) {
  const auto v = get<std::vector<int>>(doc, path);
  if (v.size() != 3) throw InvalidArgument("config: key '" + path + "' must be [r, g, b]");
  for (int c : v) {
    if (c < 0 || c > 255) throw InvalidArgument("config: key '" + path + "' components must be 0..255");
  }
  return {static_cast<std::uint8_t>(v[0]), static_cast<std::uint8_t>(v[1]), static_cast<std::uint8_t>(v[2])};
}

void require_file(const std::string& path, const char* what) {
  if (!path.empty() && !fs::is_regular_file(path)) {
    throw IoError(std::string("config: ") + what + " '" + path + "' does not exist");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (input_path.empty()) throw InvalidArgument("config: paths.input is required");
  if (output_dir.empty()) throw InvalidArgument("config: paths.output_dir is required");
  require_file(input_path, "input keypoints");
  require_file(mapping_path, "mapping table");
  require_file(model_path, "model definition");
  require_file(appearance_path, "appearance image");
  if (!source_frames_dir.empty() && !fs::is_directory(source_frames_dir)) {
    throw IoError("config: source frames directory '" + source_frames_dir + "' does not exist");
  }
  if (!(interpolate_threshold > 0.0 && interpolate_threshold <= 1.0)) {
    throw InvalidArgument("config: filter.interpolate_threshold must lie in (0, 1]");
  }
  filter.validate();
  fit.validate();
  style.validate();
  canny.validate();
  if (canvas_width <= 0 || canvas_height <= 0) throw InvalidArgument("config: render canvas must be non-empty");
  if (mode == ConditioningMode::CannyDepth) {
    throw InvalidArgument("config: generate.mode canny_depth requires a depth source, and none is available");
  }
  if (weights.pose < 0.0 || weights.canny < 0.0 || weights.depth < 0.0) {
    throw InvalidArgument("config: generate.weights must be >= 0");
  }
  service.validate();
  if (metrics.provider != "none" && metrics.provider != "stub" && metrics.provider != "remote") {
    throw InvalidArgument("config: evaluate.provider must be none, stub or remote");
  }
  if (metrics.provider == "remote" && metrics.provider_url.empty()) {
    throw InvalidArgument("config: evaluate.provider_url is required for the remote provider");
  }
}

PipelineConfig parse_config(std::string_view bytes, const std::string& base_dir,
                            const std::vector<std::string>& overrides) {
  json doc = to_doc(defaults());
  try {
    merge(doc, json::parse(bytes), "");
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  for (const std::string& o : overrides) apply_override(doc, o);

  PipelineConfig c;
  c.input_path = get_path(doc, "input", base_dir);
  c.mapping_path = get_path(doc, "mapping", base_dir);
  c.model_path = get_path(doc, "model", base_dir);
  c.appearance_path = get_path(doc, "appearance", base_dir);
  c.source_frames_dir = get_path(doc, "source_frames", base_dir);
  c.output_dir = get_path(doc, "output_dir", base_dir);

  c.filter.f_min = get<double>(doc, "filter.f_min");
  c.filter.beta = get<double>(doc, "filter.beta");
  c.filter.d_cutoff = get<double>(doc, "filter.d_cutoff");
  c.filter.coordinate_scale = get<double>(doc, "filter.coordinate_scale");
  c.interpolate_threshold = get<double>(doc, "filter.interpolate_threshold");

  c.fit.robust_delta = get<double>(doc, "fit.robust_delta");
  c.fit.lambda_prior = get<double>(doc, "fit.lambda_prior");
  c.fit.lambda_temporal = get<double>(doc, "fit.lambda_temporal");
  c.fit.max_iterations = get<int>(doc, "fit.max_iterations");
  c.fit.gradient_tolerance = get<double>(doc, "fit.gradient_tolerance");
  c.fit.function_tolerance = get<double>(doc, "fit.function_tolerance");
  c.fit.lm_damping_init = get<double>(doc, "fit.lm_damping_init");
  c.fit.staged = get<bool>(doc, "fit.staged");
  c.fit.hand_flip_restarts = get<bool>(doc, "fit.hand_flip_restarts");
  c.smooth_fits = get<bool>(doc, "fit.smooth");

  c.canvas_width = get<int>(doc, "render.width");
  c.canvas_height = get<int>(doc, "render.height");
  c.style.line_width = get<double>(doc, "render.line_width");
  c.style.keypoint_radius = get<double>(doc, "render.keypoint_radius");
  c.style.background = get_rgb(doc, "render.background");
  c.style.bone_colors = {get_rgb(doc, "render.bone_colors.body"), get_rgb(doc, "render.bone_colors.left_hand"),
                         get_rgb(doc, "render.bone_colors.right_hand"), get_rgb(doc, "render.bone_colors.face")};
  c.canny.sigma = get<double>(doc, "render.canny.sigma");
  c.canny.low = get<double>(doc, "render.canny.low");
  c.canny.high = get<double>(doc, "render.canny.high");

  c.mode = conditioning_mode_from_string(get<std::string>(doc, "generate.mode"));
  c.seed = get<std::uint64_t>(doc, "generate.seed");
  c.text_prompt = get_optional(doc, "generate", "prompt");
  c.negative_prompt = get_optional(doc, "generate", "negative_prompt");
  c.weights.pose = get<double>(doc, "generate.weights.pose");
  c.weights.canny = get<double>(doc, "generate.weights.canny");
  c.weights.depth = get<double>(doc, "generate.weights.depth");
  c.service.endpoint_url = get<std::string>(doc, "generate.service.endpoint_url");
  const json& token = doc.at("generate").at("service").at("auth_token");
  if (!token.is_null()) c.service.auth_token = get<std::string>(doc, "generate.service.auth_token");
  c.service.max_in_flight = get<int>(doc, "generate.service.max_in_flight");
  c.service.retry_limit = get<int>(doc, "generate.service.retry_limit");
  c.service.per_request_timeout = get<double>(doc, "generate.service.per_request_timeout");
  c.service.backoff_base = get<double>(doc, "generate.service.backoff_base");

  c.metrics.provider = get<std::string>(doc, "evaluate.provider");
  const json& url = doc.at("evaluate").at("provider_url");
  if (!url.is_null()) c.metrics.provider_url = get<std::string>(doc, "evaluate.provider_url");
  c.metrics.d_s = get<std::string>(doc, "evaluate.d_s");
  c.metrics.d_t = get<std::string>(doc, "evaluate.d_t");

  c.validate();
  return c;
}

PipelineConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  const fs::path p = fs::absolute(path);
  return parse_config(read_file(p.string()), p.parent_path().string(), overrides);
}

std::string write_config(const PipelineConfig& cfg) { return to_doc(cfg).dump(2) + "\n"; }

}  // namespace signpose
