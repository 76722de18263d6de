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

// Configuration and stage orchestration for the keypoints -> generated
// video pipeline. Every stage reads its declared inputs from the output
// directory, verifies them against the digests recorded by the stage that
// produced them, and records its own outputs in manifest.jsonl.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signpose/genclient.hpp"
#include "signpose/render.hpp"
#include "signpose/retarget.hpp"
#include "signpose/temporal_filter.hpp"

namespace signpose {

struct MetricsSettings {
  std::string provider = "stub";  // none | stub | remote
  std::string provider_url;
  std::string d_s = "a female sign language signer";
  std::string d_t = "a young male sign language signer with a beard wearing a white shirt";
};

struct PipelineConfig {
  // Paths are absolute after loading; relative ones resolve against the
  // config file's directory.
  std::string input_path;
  std::string mapping_path;     // empty: built-in table
  std::string model_path;       // empty: built-in model
  std::string appearance_path;  // empty: synthetic appearance image
  std::string source_frames_dir;  // empty: evaluate against the pose renders
  std::string output_dir;

  double interpolate_threshold = 0.5;
  FilterParams filter;
  FitConfig fit;
  bool smooth_fits = true;

  int canvas_width = 512;
  int canvas_height = 512;
  SkeletonStyle style;
  CannyParams canny;

  ConditioningMode mode = ConditioningMode::CannyPose;
  ControlWeights weights;
  std::uint64_t seed = 42;
  std::optional<std::string> text_prompt;
  std::optional<std::string> negative_prompt;
  ServiceConfig service;

  MetricsSettings metrics;

  // Throws InvalidArgument on violated invariants, IoError for missing files.
  void validate() const;
};

// Applies each "dotted.key=value" override to the document before it is
// interpreted; values parse as JSON when they can, as strings otherwise.
PipelineConfig parse_config(std::string_view bytes, const std::string& base_dir,
                            const std::vector<std::string>& overrides = {});
PipelineConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
// Complete document with every field spelled out; paths are written as
// given.
std::string write_config(const PipelineConfig& cfg);

enum class Stage { Ingest, Filter, Retarget, Render, Generate, Evaluate };

inline constexpr Stage kAllStages[] = {Stage::Ingest, Stage::Filter,   Stage::Retarget,
                                       Stage::Render, Stage::Generate, Stage::Evaluate};

std::string_view to_string(Stage stage);
Stage stage_from_string(std::string_view name);

class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& message);
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

struct ManifestEntry {
  std::string stage;
  std::map<std::string, std::string> inputs;   // artifact -> sha256
  std::string params;                          // compact JSON
  std::map<std::string, std::string> outputs;  // artifact -> sha256

  std::string to_json_line() const;
  static ManifestEntry from_json_line(std::string_view line);
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

std::string manifest_path(const PipelineConfig& cfg);
std::vector<ManifestEntry> read_manifest(const std::string& path);

// Runs one stage and writes (or replaces) its manifest line. Every failure
// is rethrown as StageError.
ManifestEntry run_stage(Stage stage, const PipelineConfig& cfg);

// All stages in order; stops at the first failure, leaving the manifest of
// the completed stages on disk.
std::vector<ManifestEntry> run_pipeline(const PipelineConfig& cfg);

}  // namespace signpose
