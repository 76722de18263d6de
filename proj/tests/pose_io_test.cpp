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

#include <algorithm>
#include <set>

#include "json.hpp"
#include "signpose/error.hpp"
#include "signpose/pose_io.hpp"
#include "signpose/synthetic.hpp"
#include "test_support.hpp"

namespace signpose {
namespace {

using nlohmann::json;
using testing::sparse_frame;
using testing::sparse_sequence;

json frame_doc(std::int64_t index, std::size_t face, std::size_t body, std::size_t hand, double conf = 1.0) {
  auto pts = [conf](std::size_t n) {
    json a = json::array();
    for (std::size_t k = 0; k < n; ++k) a.push_back({1.0 * k, 2.0 * k, conf});
    return a;
  };
  return {{"index", index}, {"face", pts(face)}, {"body", pts(body)}, {"left_hand", pts(hand)},
          {"right_hand", pts(hand)}};
}

json sparse_doc(std::size_t frames) {
  json doc = {{"schema", "sparse"}, {"fps", 25.0}, {"source_id", "doc"}, {"frames", json::array()}};
  for (std::size_t i = 0; i < frames; ++i) doc["frames"].push_back(frame_doc(static_cast<std::int64_t>(i), 70, 25, 21));
  return doc;
}

TEST(ParseSequence, WellFormedTwoFrameSparse) {
  const PoseSequence s = parse_sequence(sparse_doc(2).dump(), Schema::Sparse);
  EXPECT_EQ(s.schema, Schema::Sparse);
  ASSERT_EQ(s.frames.size(), 2u);
  EXPECT_EQ(s.frames[1].body.size(), 25u);
  EXPECT_EQ(s.source_id, "doc");
}

TEST(ParseSequence, MissingTimestampsDeriveFromIndexAndFps) {
  const PoseSequence s = parse_sequence(sparse_doc(3).dump(), Schema::Sparse);
  EXPECT_DOUBLE_EQ(s.frames[2].timestamp, 2.0 / 25.0);
}

TEST(ParseSequence, FramesAreSortedByIndex) {
  json doc = sparse_doc(0);
  doc["frames"].push_back(frame_doc(2, 70, 25, 21));
  doc["frames"].push_back(frame_doc(0, 70, 25, 21));
  doc["frames"].push_back(frame_doc(1, 70, 25, 21));
  const PoseSequence s = parse_sequence(doc.dump(), Schema::Sparse);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.frames[i].frame_index, static_cast<std::int64_t>(i));
}

TEST(ParseSequence, WrongBodyCountNamesFrameAndGroup) {
  json doc = sparse_doc(7);
  doc["frames"][5] = frame_doc(5, 70, 24, 21);
  try {
    parse_sequence(doc.dump(), Schema::Sparse);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    ASSERT_TRUE(e.frame().has_value());
    EXPECT_EQ(*e.frame(), 5);
    EXPECT_EQ(e.field_path(), "body");
    EXPECT_NE(std::string(e.what()).find("frame 5"), std::string::npos);
  }
}

TEST(ParseSequence, EmptyFrameList) {
  try {
    parse_sequence(sparse_doc(0).dump(), Schema::Sparse);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("empty sequence"), std::string::npos);
  }
}

TEST(ParseSequence, ConfidenceOutOfRange) {
  json doc = sparse_doc(3);
  doc["frames"][1]["left_hand"][4][2] = 1.5;
  try {
    parse_sequence(doc.dump(), Schema::Sparse);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.frame().value_or(-1), 1);
    EXPECT_EQ(e.field_path(), "left_hand[4].confidence");
  }
}

TEST(ParseSequence, NonMonotoneTimestamps) {
  json doc = sparse_doc(4);
  for (std::size_t i = 0; i < 4; ++i) doc["frames"][i]["t"] = 0.1 * static_cast<double>(i);
  doc["frames"][3]["t"] = 0.05;
  try {
    parse_sequence(doc.dump(), Schema::Sparse);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.frame().value_or(-1), 3);
    EXPECT_EQ(e.field_path(), "t");
  }
}

TEST(ParseSequence, MalformedDocuments) {
  EXPECT_THROW(parse_sequence("{not json", Schema::Sparse), ParseError);
  EXPECT_THROW(parse_sequence("[]", Schema::Sparse), ParseError);
  json doc = sparse_doc(1);
  doc["frames"][0]["body"][3] = {1.0, 2.0};
  EXPECT_THROW(parse_sequence(doc.dump(), Schema::Sparse), ParseError);
  doc = sparse_doc(1);
  doc["frames"][0].erase("right_hand");
  EXPECT_THROW(parse_sequence(doc.dump(), Schema::Sparse), ParseError);
  doc = sparse_doc(1);
  doc["fps"] = -3;
  EXPECT_THROW(parse_sequence(doc.dump(), Schema::Sparse), ParseError);
}

TEST(ParseSequence, DeclaredSchemaMustMatch) {
  EXPECT_THROW(parse_sequence(sparse_doc(1).dump(), Schema::Dense), ParseError);
  EXPECT_EQ(parse_sequence(sparse_doc(1).dump()).schema, Schema::Sparse);
}

TEST(ParseSequence, DenseSchemaAcceptsLargeFace) {
  json doc = {{"schema", "dense"}, {"fps", 30}, {"source_id", "d"}, {"frames", json::array()}};
  doc["frames"].push_back(frame_doc(0, 478, 33, 21));
  EXPECT_EQ(parse_sequence(doc.dump(), Schema::Dense).frames[0].face.size(), 478u);
  doc["frames"][0] = frame_doc(0, 399, 33, 21);
  EXPECT_THROW(parse_sequence(doc.dump(), Schema::Dense), ParseError);
}

TEST(WriteSequence, RoundTripIsBitExact) {
  PoseSequence s = sparse_sequence(5);
  s.frames[2].body[3] = {1.0 / 3.0, 2.0 / 7.0, 0.123456789012345678};
  s.frames[4].face[0].x = 1e-300;
  EXPECT_EQ(parse_sequence(write_sequence(s), Schema::Sparse), s);
}

TEST(WriteSequence, ZeroConfidencePreserved) {
  PoseSequence s = sparse_sequence(2);
  s.frames[1].right_hand[7].confidence = 0.0;
  const PoseSequence back = parse_sequence(write_sequence(s), Schema::Sparse);
  EXPECT_EQ(back.frames[1].right_hand[7].confidence, 0.0);
}

TEST(WriteSequence, OneFrameDocument) {
  const PoseSequence s = sparse_sequence(1);
  const json doc = json::parse(write_sequence(s));
  EXPECT_EQ(doc.at("frames").size(), 1u);
  EXPECT_EQ(doc.at("schema"), "sparse");
}

TEST(WriteSequence, RandomSequencesRoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1e4, 1e4), c(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PoseSequence s = sparse_sequence(3);
    for (FramePose& f : s.frames) {
      for (KeypointGroup g : kAllGroups) {
        for (Keypoint2D& p : f.group(g)) p = {u(rng), u(rng), c(rng)};
      }
    }
    EXPECT_EQ(parse_sequence(write_sequence(s), Schema::Sparse), s) << "trial " << trial;
  }
}

TEST(ValidateSequence, ValidSequenceHasEmptyReport) { EXPECT_TRUE(validate_sequence(sparse_sequence(4)).ok()); }

TEST(ValidateSequence, DuplicatedTimestamp) {
  PoseSequence s = sparse_sequence(6);
  s.frames[4].timestamp = s.frames[3].timestamp;
  const ValidationReport r = validate_sequence(s);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].frame.value_or(-1), 4);
  EXPECT_EQ(r.violations[0].field_path, "t");
}

TEST(ValidateSequence, ConfidenceAboveOne) {
  PoseSequence s = sparse_sequence(2);
  s.frames[0].face[10].confidence = 1.2;
  const ValidationReport r = validate_sequence(s);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].field_path, "face[10].confidence");
}

TEST(ValidateSequence, ListsEveryViolation) {
  PoseSequence s = sparse_sequence(3);
  s.frames[0].body.pop_back();
  s.frames[1].left_hand[0].confidence = -0.1;
  s.frames[2].right_hand[0].x = std::numeric_limits<double>::quiet_NaN();
  const ValidationReport r = validate_sequence(s);
  EXPECT_EQ(r.violations.size(), 3u);
}

SchemaMapping small_mapping() {
  SchemaMapping m;
  for (std::size_t k = 0; k < 70; ++k) m.face.push_back({100 + k, k});
  for (std::size_t k = 0; k < 25; ++k) m.body.push_back({32 - k, k});
  for (std::size_t k = 0; k < 21; ++k) m.hand.push_back({k, k});
  return m;
}

PoseSequence dense_sequence(std::size_t frames) {
  PoseSequence s;
  s.schema = Schema::Dense;
  s.fps = 30.0;
  s.source_id = "dense";
  for (std::size_t i = 0; i < frames; ++i) {
    FramePose f;
    f.frame_index = static_cast<std::int64_t>(i);
    f.timestamp = static_cast<double>(i) / 30.0;
    f.face = testing::points(478, 1000.0 * static_cast<double>(i), 1.0, 0.9);
    f.body = testing::points(33, 2000.0, 3.0 + static_cast<double>(i), 0.8);
    f.left_hand = testing::points(21, 3000.0, 5.0, 0.7);
    f.right_hand = testing::points(21, 4000.0, 7.0, 0.6);
    s.frames.push_back(f);
  }
  return s;
}

TEST(MapSchema, VerbatimReindexing) {
  const PoseSequence dense = dense_sequence(3);
  const SchemaMapping m = small_mapping();
  const PoseSequence sparse = map_schema(dense, m);
  EXPECT_EQ(sparse.schema, Schema::Sparse);
  ASSERT_EQ(sparse.frames.size(), dense.frames.size());
  for (std::size_t i = 0; i < dense.frames.size(); ++i) {
    EXPECT_EQ(sparse.frames[i].timestamp, dense.frames[i].timestamp);
    for (const auto& [d, s] : m.face) EXPECT_EQ(sparse.frames[i].face[s], dense.frames[i].face[d]);
    for (const auto& [d, s] : m.body) EXPECT_EQ(sparse.frames[i].body[s], dense.frames[i].body[d]);
  }
  EXPECT_EQ(sparse.fps, dense.fps);
  EXPECT_TRUE(validate_sequence(sparse).ok());
}

TEST(MapSchema, DefaultHandsAreIdentity) {
  const PoseSequence dense = dense_sequence(2);
  const PoseSequence sparse = map_schema(dense, default_schema_mapping());
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(sparse.frames[i].left_hand, dense.frames[i].left_hand);
    EXPECT_EQ(sparse.frames[i].right_hand, dense.frames[i].right_hand);
  }
}

TEST(MapSchema, DefaultFaceMapYieldsSeventyPoints) {
  const PoseSequence sparse = map_schema(dense_sequence(1), default_schema_mapping());
  EXPECT_EQ(sparse.frames[0].face.size(), 70u);
  EXPECT_EQ(sparse.frames[0].body.size(), 25u);
}

TEST(MapSchema, OutputCoordinatesComeFromInput) {
  const PoseSequence dense = dense_sequence(2);
  const PoseSequence sparse = map_schema(dense, default_schema_mapping());
  for (std::size_t i = 0; i < 2; ++i) {
    for (KeypointGroup g : kAllGroups) {
      const auto& src = dense.frames[i].group(g);
      for (const Keypoint2D& p : sparse.frames[i].group(g)) {
        EXPECT_NE(std::find(src.begin(), src.end(), p), src.end());
      }
    }
  }
}

TEST(MapSchema, DenseIndexOutOfRange) {
  SchemaMapping m = small_mapping();
  m.face[3].first = 478;
  EXPECT_THROW(map_schema(dense_sequence(1), m), InvalidArgument);
}

TEST(MapSchema, RejectsSparseInput) {
  EXPECT_THROW(map_schema(sparse_sequence(1), small_mapping()), InvalidArgument);
}

TEST(SchemaMappingCheck, CoverageAndInjectivity) {
  EXPECT_NO_THROW(check_mapping(default_schema_mapping()));
  SchemaMapping m = small_mapping();
  m.body[1].second = 0;  // slot 0 twice, slot 1 never
  EXPECT_THROW(check_mapping(m), InvalidArgument);
  m = small_mapping();
  m.hand.pop_back();
  EXPECT_THROW(check_mapping(m), InvalidArgument);
}

TEST(SchemaMappingIo, RoundTrip) {
  const SchemaMapping& m = default_schema_mapping();
  EXPECT_EQ(parse_mapping(write_mapping(m)), m);
  EXPECT_THROW(parse_mapping("{\"face\": []}"), Error);
}

TEST(SchemaMappingIo, ShippedDataFileMatchesBuiltIn) {
  const SchemaMapping m = read_mapping_file(std::string(SIGNPOSE_SOURCE_DIR) + "/core/data/default_mapping.json");
  EXPECT_EQ(m, default_schema_mapping());
}

TEST(EmbedDense, MapsBackToTheSparseInput) {
  const PoseSequence sparse = sparse_sequence(3);
  const SchemaMapping& m = default_schema_mapping();
  const PoseSequence dense = embed_dense(sparse, m);
  EXPECT_EQ(dense.schema, Schema::Dense);
  EXPECT_TRUE(validate_sequence(dense).ok());
  const PoseSequence back = map_schema(dense, m);

  // Sparse slots that share a dense source keep whichever was scattered last.
  std::map<std::size_t, std::size_t> users;
  for (const auto& [d, s] : m.body) ++users[d];
  for (std::size_t i = 0; i < sparse.frames.size(); ++i) {
    EXPECT_EQ(back.frames[i].face, sparse.frames[i].face);
    EXPECT_EQ(back.frames[i].left_hand, sparse.frames[i].left_hand);
    EXPECT_EQ(back.frames[i].right_hand, sparse.frames[i].right_hand);
    for (const auto& [d, s] : m.body) {
      if (users[d] == 1) {
        EXPECT_EQ(back.frames[i].body[s], sparse.frames[i].body[s]);
      }
    }
  }
}

TEST(SequenceFiles, WriteThenRead) {
  testing::TempDir dir;
  const PoseSequence s = sparse_sequence(2);
  write_sequence_file(s, dir.file("k.json"));
  EXPECT_EQ(read_sequence_file(dir.file("k.json")), s);
  EXPECT_THROW(read_sequence_file(dir.file("absent.json")), IoError);
}

}  // namespace
}  // namespace signpose
