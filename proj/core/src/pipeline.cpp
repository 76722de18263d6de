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

#include "signpose/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "signpose/codec.hpp"
#include "signpose/embedding.hpp"
#include "signpose/metrics.hpp"
#include "signpose/synthetic.hpp"

namespace signpose {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Ingest: return "ingest";
    case Stage::Filter: return "filter";
    case Stage::Retarget: return "retarget";
    case Stage::Render: return "render";
    case Stage::Generate: return "generate";
    case Stage::Evaluate: return "evaluate";
  }
  return "ingest";
}

Stage stage_from_string(std::string_view name) {
  for (Stage s : kAllStages) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown stage '" + std::string(name) +
                        "' (expected ingest, filter, retarget, render, generate or evaluate)");
}

StageError::StageError(Stage stage, const std::string& message)
    : Error("stage " + std::string(to_string(stage)) + ": " + message), stage_(stage) {}

std::string ManifestEntry::to_json_line() const {
  json doc = {{"stage", stage}, {"inputs", inputs}, {"params", json::parse(params)}, {"outputs", outputs}};
  return doc.dump();
}

ManifestEntry ManifestEntry::from_json_line(std::string_view line) {
  try {
    const json doc = json::parse(line);
    ManifestEntry e;
    e.stage = doc.at("stage").get<std::string>();
    e.inputs = doc.at("inputs").get<std::map<std::string, std::string>>();
    e.params = doc.at("params").dump();
    e.outputs = doc.at("outputs").get<std::map<std::string, std::string>>();
    return e;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("manifest line: ") + ex.what());
  }
}

std::string manifest_path(const PipelineConfig& cfg) { return (fs::path(cfg.output_dir) / "manifest.jsonl").string(); }

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::vector<ManifestEntry> out;
  if (!fs::exists(path)) return out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(ManifestEntry::from_json_line(line));
  }
  return out;
}

namespace {

constexpr const char* kKeypoints = "keypoints.json";
constexpr const char* kFiltered = "filtered.json";
constexpr const char* kFits = "fits.json";
constexpr const char* kConditioningDir = "conditioning";
constexpr const char* kGeneratedDir = "generated";
constexpr const char* kGenerationManifest = "generated/generation.json";
constexpr const char* kMetrics = "metrics.json";

std::string generated_frame_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu.png", i);
  return buf;
}

// Tracks a stage's inputs and outputs and checks upstream artifacts against
// the digests their producers recorded.
class StageRun {
 public:
  StageRun(Stage stage, const PipelineConfig& cfg)
      : cfg_(cfg), manifest_(read_manifest(manifest_path(cfg))) {
    entry_.stage = std::string(to_string(stage));
  }

  std::string path(const std::string& artifact) const { return (fs::path(cfg_.output_dir) / artifact).string(); }

  // Verifies an artifact written by `producer` and records it as an input.
  std::string upstream(const std::string& artifact, Stage producer) {
    const std::string p = path(artifact);
    if (!fs::is_regular_file(p)) {
      throw Error("missing upstream artifact '" + artifact + "' (run stage " + std::string(to_string(producer)) +
                  " first)");
    }
    const std::string digest = sha256_file(p);
    for (const ManifestEntry& e : manifest_) {
      if (e.stage != to_string(producer)) continue;
      const auto it = e.outputs.find(artifact);
      if (it != e.outputs.end() && it->second != digest) {
        throw Error("digest mismatch for '" + artifact + "': stage " + std::string(to_string(producer)) +
                    " recorded " + it->second + ", file has " + digest);
      }
    }
    entry_.inputs[artifact] = digest;
    return p;
  }

  void external(const std::string& name, const std::string& digest) { entry_.inputs[name] = digest; }

  std::string write(const std::string& artifact, std::string_view bytes) {
    const std::string p = path(artifact);
    write_file(p, bytes);
    entry_.outputs[artifact] = sha256_hex(bytes);
    return p;
  }

  void record_output(const std::string& artifact) { entry_.outputs[artifact] = sha256_file(path(artifact)); }

  ManifestEntry finish(json params) {
    entry_.params = params.dump();
    std::vector<ManifestEntry> updated;
    bool placed = false;
    const auto order = [](const std::string& name) {
      return static_cast<int>(stage_from_string(name));
    };
    for (const ManifestEntry& e : manifest_) {
      if (e.stage == entry_.stage) continue;
      if (!placed && order(e.stage) > order(entry_.stage)) {
        updated.push_back(entry_);
        placed = true;
      }
      updated.push_back(e);
    }
    if (!placed) updated.push_back(entry_);
    std::string text;
    for (const ManifestEntry& e : updated) text += e.to_json_line() + "\n";
    write_file(manifest_path(cfg_), text);
    return entry_;
  }

 private:
  const PipelineConfig& cfg_;
  std::vector<ManifestEntry> manifest_;
  ManifestEntry entry_;
};

json config_section(const PipelineConfig& cfg, const char* key) { return json::parse(write_config(cfg)).at(key); }

KinematicModel load_model(const PipelineConfig& cfg, StageRun& run) {
  if (cfg.model_path.empty()) {
    run.external("model", sha256_hex(write_model(default_upper_body_model())));
    return default_upper_body_model();
  }
  run.external("model", sha256_file(cfg.model_path));
  return read_model_file(cfg.model_path);
}

ManifestEntry ingest(const PipelineConfig& cfg) {
  StageRun run(Stage::Ingest, cfg);
  const std::string bytes = read_file(cfg.input_path);
  run.external("input", sha256_hex(bytes));
  PoseSequence seq = parse_sequence(bytes);
  json params = {{"source_schema", std::string(to_string(seq.schema))}};
  if (seq.schema == Schema::Dense) {
    SchemaMapping mapping;
    if (cfg.mapping_path.empty()) {
      mapping = default_schema_mapping();
      run.external("mapping", sha256_hex(write_mapping(mapping)));
    } else {
      mapping = read_mapping_file(cfg.mapping_path);
      run.external("mapping", sha256_file(cfg.mapping_path));
    }
    seq = map_schema(seq, mapping);
  }
  params["frames"] = seq.frames.size();
  run.write(kKeypoints, write_sequence(seq));
  return run.finish(params);
}

ManifestEntry filter(const PipelineConfig& cfg) {
  StageRun run(Stage::Filter, cfg);
  const PoseSequence seq = read_sequence_file(run.upstream(kKeypoints, Stage::Ingest));
  const PoseSequence filled = interpolate_gaps(seq, cfg.interpolate_threshold);
  run.write(kFiltered, write_sequence(filter_sequence(filled, cfg.filter)));
  return run.finish(config_section(cfg, "filter"));
}

ManifestEntry retarget(const PipelineConfig& cfg) {
  StageRun run(Stage::Retarget, cfg);
  const PoseSequence seq = read_sequence_file(run.upstream(kFiltered, Stage::Filter));
  const KinematicModel model = load_model(cfg, run);
  SequenceFitOptions options;
  options.smooth = cfg.smooth_fits;
  run.write(kFits, write_fits(fit_sequence(model, seq, cfg.fit, cfg.filter, options)));
  json params = config_section(cfg, "fit");
  params["smoothing"] = config_section(cfg, "filter");
  return run.finish(params);
}

ManifestEntry render(const PipelineConfig& cfg) {
  StageRun run(Stage::Render, cfg);
  const std::vector<FitResult> fits = parse_fits(read_file(run.upstream(kFits, Stage::Retarget)));
  const PoseSequence seq = read_sequence_file(run.upstream(kFiltered, Stage::Filter));
  const KinematicModel model = load_model(cfg, run);
  if (fits.size() != seq.frames.size()) {
    throw Error(std::to_string(fits.size()) + " fits for " + std::to_string(seq.frames.size()) + " keypoint frames");
  }
  std::vector<ConditioningFrame> frames;
  frames.reserve(fits.size());
  for (std::size_t i = 0; i < fits.size(); ++i) {
    ConditioningFrame f = make_conditioning_frame(model, fits[i], seq.frames[i].face, fits[i].camera, cfg.style,
                                                  cfg.canvas_width, cfg.canvas_height, cfg.canny);
    f.frame_index = static_cast<std::int64_t>(i);
    frames.push_back(std::move(f));
  }
  const std::string dir = run.path(kConditioningDir);
  fs::create_directories(dir);
  write_conditioning_frames(frames, dir, cfg.style, cfg.canny);
  const std::string prefix = std::string(kConditioningDir) + "/";
  run.record_output(prefix + "frames.json");
  for (const ConditioningFrame& f : frames) {
    run.record_output(prefix + pose_frame_name(f.frame_index));
    run.record_output(prefix + canny_frame_name(f.frame_index));
  }
  return run.finish(config_section(cfg, "render"));
}

std::vector<std::string> conditioning_listing(StageRun& run, const char* kind) {
  const std::string prefix = std::string(kConditioningDir) + "/";
  const json doc = json::parse(read_file(run.upstream(prefix + "frames.json", Stage::Render)));
  std::vector<std::string> names;
  for (const json& f : doc.at("frames")) names.push_back(prefix + f.at(kind).get<std::string>());
  return names;
}

ManifestEntry generate(const PipelineConfig& cfg) {
  StageRun run(Stage::Generate, cfg);
  const std::vector<std::string> poses = conditioning_listing(run, "pose");
  const std::vector<std::string> cannies = conditioning_listing(run, "canny");
  GenerationJob job;
  for (std::size_t i = 0; i < poses.size(); ++i) {
    ConditioningFrame f;
    f.frame_index = static_cast<std::int64_t>(i);
    f.pose_image = read_png(run.upstream(poses[i], Stage::Render));
    f.canny_image = read_png(run.upstream(cannies[i], Stage::Render));
    job.frames.push_back(std::move(f));
  }
  if (cfg.appearance_path.empty()) {
    job.appearance_image = synthetic_appearance(cfg.canvas_width, cfg.canvas_height);
    run.external("appearance", sha256_hex(encode_png(job.appearance_image)));
  } else {
    job.appearance_image = to_rgb(read_png(cfg.appearance_path));
    run.external("appearance", sha256_file(cfg.appearance_path));
  }
  job.text_prompt = cfg.text_prompt;
  job.negative_prompt = cfg.negative_prompt;
  job.seed = cfg.seed;
  job.mode = cfg.mode;
  job.weights = cfg.weights;

  json params = config_section(cfg, "generate");
  params["service"].erase("endpoint_url");
  params["service"].erase("auth_token");

  fs::create_directories(run.path(kGeneratedDir));
  GenerationOutcome outcome;
  try {
    outcome = generate_video(job, cfg.service);
  } catch (const JobAborted& e) {
    run.write(kGenerationManifest, e.manifest().to_json());
    throw;
  }
  for (std::size_t i = 0; i < outcome.frames.size(); ++i) {
    run.write(std::string(kGeneratedDir) + "/" + generated_frame_name(i), encode_png(outcome.frames[i]));
  }
  run.write(kGenerationManifest, outcome.manifest.to_json());
  return run.finish(params);
}

ManifestEntry evaluate(const PipelineConfig& cfg) {
  StageRun run(Stage::Evaluate, cfg);
  const json gen = json::parse(read_file(run.upstream(kGenerationManifest, Stage::Generate)));
  std::vector<Image> generated;
  for (std::size_t i = 0; i < gen.at("frames").size(); ++i) {
    generated.push_back(read_png(run.upstream(std::string(kGeneratedDir) + "/" + generated_frame_name(i), Stage::Generate)));
  }
  const PoseSequence seq = read_sequence_file(run.upstream(kFiltered, Stage::Filter));

  std::unique_ptr<EmbeddingProvider> provider =
      make_embedding_provider(cfg.metrics.provider, cfg.metrics.provider_url, cfg.service.per_request_timeout);
  std::vector<Image> source;
  if (provider) {
    if (cfg.source_frames_dir.empty()) {
      for (const std::string& name : conditioning_listing(run, "pose")) {
        source.push_back(read_png(run.upstream(name, Stage::Render)));
      }
    } else {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(cfg.source_frames_dir)) {
        if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const fs::path& p : files) {
        run.external("source/" + p.filename().string(), sha256_file(p.string()));
        source.push_back(read_png(p.string()));
      }
    }
  }
  MetricsReport report = evaluate_video(generated, source, cfg.metrics.d_s, cfg.metrics.d_t, provider.get());
  report.jitter = jitter(seq);
  run.write(kMetrics, write_report(report));
  json params = config_section(cfg, "evaluate");
  params.erase("provider_url");
  params["source"] = cfg.source_frames_dir.empty() ? "pose_renders" : "source_frames";
  return run.finish(params);
}

}  // namespace

ManifestEntry run_stage(Stage stage, const PipelineConfig& cfg) {
  try {
    fs::create_directories(cfg.output_dir);
    switch (stage) {
      case Stage::Ingest: return ingest(cfg);
      case Stage::Filter: return filter(cfg);
      case Stage::Retarget: return retarget(cfg);
      case Stage::Render: return render(cfg);
      case Stage::Generate: return generate(cfg);
      case Stage::Evaluate: return evaluate(cfg);
    }
    throw InvalidArgument("unknown stage");
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::vector<ManifestEntry> run_pipeline(const PipelineConfig& cfg) {
  std::vector<ManifestEntry> entries;
  for (Stage s : kAllStages) entries.push_back(run_stage(s, cfg));
  return entries;
}

}  // namespace signpose
