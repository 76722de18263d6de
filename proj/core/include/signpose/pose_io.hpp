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

// Keypoint sequences: the data model shared by every pipeline stage, plus
// parsing, validation, serialization and dense-to-sparse schema mapping.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace signpose {

// Pixel coordinates in the source frame, origin top-left, y down.
// confidence == 0 marks a missing point; its coordinates carry no meaning.
struct Keypoint2D {
  double x = 0.0;
  double y = 0.0;
  double confidence = 0.0;

  friend bool operator==(const Keypoint2D&, const Keypoint2D&) = default;
};

enum class Schema { Dense, Sparse };

enum class KeypointGroup { Face, Body, LeftHand, RightHand };

inline constexpr std::array<KeypointGroup, 4> kAllGroups = {
    KeypointGroup::Face, KeypointGroup::Body, KeypointGroup::LeftHand,
    KeypointGroup::RightHand};

std::string_view to_string(Schema schema);
std::string_view to_string(KeypointGroup group);
Schema schema_from_string(std::string_view name);

struct FramePose {
  std::vector<Keypoint2D> face;
  std::vector<Keypoint2D> body;
  std::vector<Keypoint2D> left_hand;
  std::vector<Keypoint2D> right_hand;
  std::int64_t frame_index = 0;
  double timestamp = 0.0;

  std::vector<Keypoint2D>& group(KeypointGroup g);
  const std::vector<Keypoint2D>& group(KeypointGroup g) const;

  friend bool operator==(const FramePose&, const FramePose&) = default;
};

struct PoseSequence {
  std::vector<FramePose> frames;
  Schema schema = Schema::Sparse;
  double fps = 30.0;
  std::string source_id;

  friend bool operator==(const PoseSequence&, const PoseSequence&) = default;
};

// Per-group keypoint counts. For the dense schema the face count is a lower
// bound (face meshes ship with 468 or 478 landmarks).
struct SchemaLayout {
  std::size_t face;
  std::size_t body;
  std::size_t hand;
  bool face_is_minimum;
};

inline constexpr SchemaLayout kSparseLayout{70, 25, 21, false};
inline constexpr SchemaLayout kDenseLayout{400, 33, 21, true};

const SchemaLayout& layout_for(Schema schema);

struct Violation {
  std::optional<std::int64_t> frame;
  std::string field_path;
  std::string message;

  std::string to_string() const;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// Lists every invariant violation. Never throws.
ValidationReport validate_sequence(const PoseSequence& seq);

// Parses a keypoint document. Frames are returned sorted by index; missing
// timestamps default to index / fps. Throws ParseError naming the frame and
// field of the first problem found.
PoseSequence parse_sequence(std::string_view bytes, Schema schema);

// Same, but takes the schema from the document's own "schema" field.
PoseSequence parse_sequence(std::string_view bytes);

std::string write_sequence(const PoseSequence& seq);

PoseSequence read_sequence_file(const std::string& path);
void write_sequence_file(const PoseSequence& seq, const std::string& path);

// Dense index -> sparse index pairs, one table per group. Both hands share
// the hand table.
struct SchemaMapping {
  std::vector<std::pair<std::size_t, std::size_t>> face;
  std::vector<std::pair<std::size_t, std::size_t>> body;
  std::vector<std::pair<std::size_t, std::size_t>> hand;

  friend bool operator==(const SchemaMapping&, const SchemaMapping&) = default;
};

// MediaPipe (pose 33 / face mesh 478 / hand 21) to OpenPose (BODY_25 /
// face 70 / hand 21). Neck and MidHip have no MediaPipe counterpart and are
// fed from the left shoulder and left hip respectively.
const SchemaMapping& default_schema_mapping();

// Throws InvalidArgument unless each sparse slot is covered exactly once.
void check_mapping(const SchemaMapping& mapping);

SchemaMapping parse_mapping(std::string_view bytes);
std::string write_mapping(const SchemaMapping& mapping);
SchemaMapping read_mapping_file(const std::string& path);

// Pure re-indexing: every output keypoint is a verbatim copy of the dense
// keypoint it maps from.
PoseSequence map_schema(const PoseSequence& seq, const SchemaMapping& mapping);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace signpose
