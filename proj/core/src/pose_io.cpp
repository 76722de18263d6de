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

#include "signpose/pose_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "signpose/error.hpp"

namespace signpose {

using nlohmann::json;

std::string_view to_string(Schema schema) {
  return schema == Schema::Dense ? "dense" : "sparse";
}

std::string_view to_string(KeypointGroup group) {
  switch (group) {
    case KeypointGroup::Face: return "face";
    case KeypointGroup::Body: return "body";
    case KeypointGroup::LeftHand: return "left_hand";
    case KeypointGroup::RightHand: return "right_hand";
  }
  return "?";
}

Schema schema_from_string(std::string_view name) {
  if (name == "dense") return Schema::Dense;
  if (name == "sparse") return Schema::Sparse;
  throw ParseError("unknown schema '" + std::string(name) + "'", std::nullopt, "schema");
}

std::vector<Keypoint2D>& FramePose::group(KeypointGroup g) {
  switch (g) {
    case KeypointGroup::Face: return face;
    case KeypointGroup::Body: return body;
    case KeypointGroup::LeftHand: return left_hand;
    case KeypointGroup::RightHand: return right_hand;
  }
  return body;
}

const std::vector<Keypoint2D>& FramePose::group(KeypointGroup g) const {
  return const_cast<FramePose*>(this)->group(g);
}

const SchemaLayout& layout_for(Schema schema) {
  return schema == Schema::Dense ? kDenseLayout : kSparseLayout;
}

std::string Violation::to_string() const {
  std::string out;
  if (frame) out += "frame " + std::to_string(*frame) + ": ";
  if (!field_path.empty()) out += field_path + ": ";
  return out + message;
}

namespace {

std::size_t expected_count(const SchemaLayout& layout, KeypointGroup g) {
  switch (g) {
    case KeypointGroup::Face: return layout.face;
    case KeypointGroup::Body: return layout.body;
    default: return layout.hand;
  }
}

}  // namespace

ValidationReport validate_sequence(const PoseSequence& seq) {
  ValidationReport report;
  auto add = [&](std::optional<std::int64_t> frame, std::string path, std::string msg) {
    report.violations.push_back({frame, std::move(path), std::move(msg)});
  };

  if (!(seq.fps > 0.0) || !std::isfinite(seq.fps)) add(std::nullopt, "fps", "fps must be a positive finite number");
  if (seq.frames.empty()) {
    add(std::nullopt, "frames", "empty sequence");
    return report;
  }

  const SchemaLayout& layout = layout_for(seq.schema);
  const FramePose& first = seq.frames.front();

  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const FramePose& f = seq.frames[i];
    const auto idx = f.frame_index;
    for (KeypointGroup g : kAllGroups) {
      const auto& pts = f.group(g);
      const std::string name(to_string(g));
      const std::size_t want = expected_count(layout, g);
      const bool minimum = g == KeypointGroup::Face && layout.face_is_minimum;
      if (minimum ? pts.size() < want : pts.size() != want) {
        add(idx, name,
            "expected " + std::string(minimum ? "at least " : "") + std::to_string(want) +
                " keypoints for " + std::string(to_string(seq.schema)) + " schema, got " +
                std::to_string(pts.size()));
      } else if (const std::size_t ref = first.group(g).size();
                 (minimum ? ref >= want : ref == want) && pts.size() != ref) {
        add(idx, name,
            "keypoint count " + std::to_string(pts.size()) + " differs from frame " +
                std::to_string(first.frame_index) + " (" + std::to_string(first.group(g).size()) +
                ")");
      }
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const Keypoint2D& p = pts[k];
        const std::string path = name + "[" + std::to_string(k) + "]";
        if (!(p.confidence >= 0.0 && p.confidence <= 1.0)) {
          std::ostringstream os;
          os << "confidence " << p.confidence << " outside [0, 1]";
          add(idx, path + ".confidence", os.str());
        }
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) add(idx, path, "non-finite coordinate");
      }
    }
    if (!std::isfinite(f.timestamp)) add(idx, "t", "non-finite timestamp");
    if (i > 0) {
      const FramePose& prev = seq.frames[i - 1];
      if (f.frame_index <= prev.frame_index) {
        add(idx, "index",
            "frame index not increasing (previous " + std::to_string(prev.frame_index) + ")");
      }
      if (!(f.timestamp > prev.timestamp)) {
        std::ostringstream os;
        os.precision(17);
        os << "timestamp " << f.timestamp << " not greater than frame " << prev.frame_index
           << " timestamp " << prev.timestamp;
        add(idx, "t", os.str());
      }
    }
  }
  return report;
}

namespace {

std::vector<Keypoint2D> parse_group(const json& frame, KeypointGroup g, std::int64_t idx) {
  const std::string name(to_string(g));
  auto it = frame.find(name);
  if (it == frame.end()) throw ParseError("missing keypoint array", idx, name);
  if (!it->is_array()) throw ParseError("expected an array of [x, y, confidence]", idx, name);
  std::vector<Keypoint2D> out;
  out.reserve(it->size());
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& t = (*it)[k];
    const std::string path = name + "[" + std::to_string(k) + "]";
    if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() ||
        !t[2].is_number()) {
      throw ParseError("expected [x, y, confidence] triple", idx, path);
    }
    out.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
  }
  return out;
}

PoseSequence parse_document(std::string_view bytes, std::optional<Schema> declared) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("malformed document: top level must be an object");

  PoseSequence seq;
  auto schema_it = doc.find("schema");
  if (schema_it == doc.end() || !schema_it->is_string()) {
    throw ParseError("missing or non-string field", std::nullopt, "schema");
  }
  const Schema in_doc = schema_from_string(schema_it->get<std::string>());
  if (declared && *declared != in_doc) {
    throw ParseError("document declares schema '" + std::string(to_string(in_doc)) +
                         "' but '" + std::string(to_string(*declared)) + "' was requested",
                     std::nullopt, "schema");
  }
  seq.schema = in_doc;

  auto fps_it = doc.find("fps");
  if (fps_it == doc.end() || !fps_it->is_number()) {
    throw ParseError("missing or non-numeric field", std::nullopt, "fps");
  }
  seq.fps = fps_it->get<double>();
  if (!(seq.fps > 0.0)) throw ParseError("fps must be positive", std::nullopt, "fps");

  if (auto it = doc.find("source_id"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("expected a string", std::nullopt, "source_id");
    seq.source_id = it->get<std::string>();
  }

  auto frames_it = doc.find("frames");
  if (frames_it == doc.end() || !frames_it->is_array()) {
    throw ParseError("missing or non-array field", std::nullopt, "frames");
  }
  if (frames_it->empty()) throw ParseError("empty sequence", std::nullopt, "frames");

  for (std::size_t i = 0; i < frames_it->size(); ++i) {
    const json& jf = (*frames_it)[i];
    const std::string where = "frames[" + std::to_string(i) + "]";
    if (!jf.is_object()) throw ParseError("expected an object", std::nullopt, where);
    auto idx_it = jf.find("index");
    if (idx_it == jf.end() || !idx_it->is_number_integer()) {
      throw ParseError("missing or non-integer frame index", std::nullopt, where + ".index");
    }
    FramePose f;
    f.frame_index = idx_it->get<std::int64_t>();
    if (auto t = jf.find("t"); t != jf.end() && !t->is_null()) {
      if (!t->is_number()) throw ParseError("expected a number", f.frame_index, "t");
      f.timestamp = t->get<double>();
    } else {
      f.timestamp = static_cast<double>(f.frame_index) / seq.fps;
    }
    for (KeypointGroup g : kAllGroups) f.group(g) = parse_group(jf, g, f.frame_index);
    seq.frames.push_back(std::move(f));
  }

  std::stable_sort(seq.frames.begin(), seq.frames.end(),
                   [](const FramePose& a, const FramePose& b) { return a.frame_index < b.frame_index; });

  const ValidationReport report = validate_sequence(seq);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    throw ParseError(v.message, v.frame, v.field_path);
  }
  return seq;
}

json group_to_json(const std::vector<Keypoint2D>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y, p.confidence});
  return arr;
}

}  // namespace

PoseSequence parse_sequence(std::string_view bytes, Schema schema) {
  return parse_document(bytes, schema);
}

PoseSequence parse_sequence(std::string_view bytes) { return parse_document(bytes, std::nullopt); }

std::string write_sequence(const PoseSequence& seq) {
  json doc;
  doc["schema"] = std::string(to_string(seq.schema));
  doc["fps"] = seq.fps;
  doc["source_id"] = seq.source_id;
  json frames = json::array();
  for (const FramePose& f : seq.frames) {
    json jf;
    jf["index"] = f.frame_index;
    jf["t"] = f.timestamp;
    for (KeypointGroup g : kAllGroups) jf[std::string(to_string(g))] = group_to_json(f.group(g));
    frames.push_back(std::move(jf));
  }
  doc["frames"] = std::move(frames);
  return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

PoseSequence read_sequence_file(const std::string& path) { return parse_sequence(read_file(path)); }

void write_sequence_file(const PoseSequence& seq, const std::string& path) {
  write_file(path, write_sequence(seq));
}

}  // namespace signpose
