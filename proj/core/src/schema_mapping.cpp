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

#include <algorithm>
#include <array>

#include "json.hpp"
#include "signpose/error.hpp"
#include "signpose/pose_io.hpp"

namespace signpose {

using nlohmann::json;

namespace {

using IndexPairs = std::vector<std::pair<std::size_t, std::size_t>>;

// OpenPose face-70 order: jaw 0-16, right brow 17-21, left brow 22-26,
// nose bridge 27-30, nostrils 31-35, right eye 36-41, left eye 42-47,
// outer lip 48-59, inner lip 60-67, pupils 68-69.
constexpr std::array<std::size_t, 70> kFaceMeshForOpenPoseFace = {
    162, 234, 93,  58,  172, 136, 149, 148, 152, 377, 378, 365, 397, 288,
    323, 454, 389, 71,  63,  105, 66,  107, 336, 296, 334, 293, 301, 168,
    197, 5,   4,   75,  97,  2,   326, 305, 33,  160, 158, 133, 153, 144,
    362, 385, 387, 263, 373, 380, 61,  39,  37,  0,   267, 269, 291, 405,
    314, 17,  84,  181, 78,  82,  13,  312, 308, 317, 14,  87,  468, 473};

// BODY_25 slot -> MediaPipe pose landmark.
constexpr std::array<std::size_t, 25> kPoseForBody25 = {
    0,   // Nose
    11,  // Neck (no counterpart; left shoulder)
    12,  // RShoulder
    14,  // RElbow
    16,  // RWrist
    11,  // LShoulder
    13,  // LElbow
    15,  // LWrist
    23,  // MidHip (no counterpart; left hip)
    24,  // RHip
    26,  // RKnee
    28,  // RAnkle
    23,  // LHip
    25,  // LKnee
    27,  // LAnkle
    5,   // REye
    2,   // LEye
    8,   // REar
    7,   // LEar
    31,  // LBigToe
    31,  // LSmallToe
    29,  // LHeel
    32,  // RBigToe
    32,  // RSmallToe
    30,  // RHeel
};

template <std::size_t N>
IndexPairs to_pairs(const std::array<std::size_t, N>& dense_for_sparse) {
  IndexPairs out;
  for (std::size_t s = 0; s < N; ++s) out.emplace_back(dense_for_sparse[s], s);
  return out;
}

void check_table(const IndexPairs& pairs, std::size_t sparse_count, const char* name) {
  std::vector<int> seen(sparse_count, 0);
  for (const auto& [dense, sparse] : pairs) {
    if (sparse >= sparse_count) {
      throw InvalidArgument(std::string("mapping.") + name + ": sparse index " +
                            std::to_string(sparse) + " out of range (" +
                            std::to_string(sparse_count) + " slots)");
    }
    if (++seen[sparse] > 1) {
      throw InvalidArgument(std::string("mapping.") + name + ": sparse index " +
                            std::to_string(sparse) + " mapped more than once");
    }
  }
  for (std::size_t s = 0; s < sparse_count; ++s) {
    if (seen[s] == 0) {
      throw InvalidArgument(std::string("mapping.") + name + ": sparse index " +
                            std::to_string(s) + " not covered");
    }
  }
}

std::vector<Keypoint2D> remap(const std::vector<Keypoint2D>& src, const IndexPairs& pairs,
                              std::size_t sparse_count, std::int64_t frame, KeypointGroup g) {
  std::vector<Keypoint2D> out(sparse_count);
  for (const auto& [dense, sparse] : pairs) {
    if (dense >= src.size()) {
      throw InvalidArgument("frame " + std::to_string(frame) + ": mapping." +
                            std::string(to_string(g)) + ": dense index " + std::to_string(dense) +
                            " outside source count " + std::to_string(src.size()));
    }
    out[sparse] = src[dense];
  }
  return out;
}

IndexPairs parse_pairs(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end() || !it->is_array()) throw ParseError("missing or non-array table", std::nullopt, name);
  IndexPairs out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& p = (*it)[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
      throw ParseError("expected [dense_index, sparse_index] of non-negative integers", std::nullopt,
                       std::string(name) + "[" + std::to_string(i) + "]");
    }
    out.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
  }
  return out;
}

}  // namespace

const SchemaMapping& default_schema_mapping() {
  static const SchemaMapping mapping = [] {
    SchemaMapping m;
    m.face = to_pairs(kFaceMeshForOpenPoseFace);
    m.body = to_pairs(kPoseForBody25);
    for (std::size_t k = 0; k < kSparseLayout.hand; ++k) m.hand.emplace_back(k, k);
    return m;
  }();
  return mapping;
}

void check_mapping(const SchemaMapping& mapping) {
  check_table(mapping.face, kSparseLayout.face, "face");
  check_table(mapping.body, kSparseLayout.body, "body");
  check_table(mapping.hand, kSparseLayout.hand, "hand");
}

SchemaMapping parse_mapping(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed mapping document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("malformed mapping document: top level must be an object");
  SchemaMapping m;
  m.face = parse_pairs(doc, "face");
  m.body = parse_pairs(doc, "body");
  m.hand = parse_pairs(doc, "hand");
  check_mapping(m);
  return m;
}

std::string write_mapping(const SchemaMapping& mapping) {
  json doc;
  auto table = [](const IndexPairs& pairs) {
    json arr = json::array();
    for (const auto& [d, s] : pairs) arr.push_back({d, s});
    return arr;
  };
  doc["face"] = table(mapping.face);
  doc["body"] = table(mapping.body);
  doc["hand"] = table(mapping.hand);
  return doc.dump() + "\n";
}

SchemaMapping read_mapping_file(const std::string& path) { return parse_mapping(read_file(path)); }

PoseSequence map_schema(const PoseSequence& seq, const SchemaMapping& mapping) {
  if (seq.schema != Schema::Dense) throw InvalidArgument("map_schema: input sequence must use the dense schema");
  check_mapping(mapping);
  PoseSequence out;
  out.schema = Schema::Sparse;
  out.fps = seq.fps;
  out.source_id = seq.source_id;
  out.frames.reserve(seq.frames.size());
  for (const FramePose& f : seq.frames) {
    FramePose g;
    g.frame_index = f.frame_index;
    g.timestamp = f.timestamp;
    g.face = remap(f.face, mapping.face, kSparseLayout.face, f.frame_index, KeypointGroup::Face);
    g.body = remap(f.body, mapping.body, kSparseLayout.body, f.frame_index, KeypointGroup::Body);
    g.left_hand = remap(f.left_hand, mapping.hand, kSparseLayout.hand, f.frame_index, KeypointGroup::LeftHand);
    g.right_hand = remap(f.right_hand, mapping.hand, kSparseLayout.hand, f.frame_index, KeypointGroup::RightHand);
    out.frames.push_back(std::move(g));
  }
  return out;
}

}  // namespace signpose
