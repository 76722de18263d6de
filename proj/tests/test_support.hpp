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

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <system_error>

#include "signpose/image.hpp"
#include "signpose/pose_io.hpp"

namespace signpose::testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "signpose") {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::vector<Keypoint2D> points(std::size_t n, double x0, double y0, double conf = 1.0) {
  std::vector<Keypoint2D> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back({x0 + static_cast<double>(k), y0 + 0.5 * static_cast<double>(k), conf});
  return out;
}

inline FramePose sparse_frame(std::int64_t index, double t, double shift = 0.0) {
  FramePose f;
  f.frame_index = index;
  f.timestamp = t;
  f.face = points(kSparseLayout.face, 100.0 + shift, 50.0);
  f.body = points(kSparseLayout.body, 200.0 + shift, 150.0);
  f.left_hand = points(kSparseLayout.hand, 300.0 + shift, 250.0);
  f.right_hand = points(kSparseLayout.hand, 10.0 + shift, 260.0);
  return f;
}

inline PoseSequence sparse_sequence(std::size_t frames, double fps = 30.0) {
  PoseSequence s;
  s.schema = Schema::Sparse;
  s.fps = fps;
  s.source_id = "unit";
  for (std::size_t i = 0; i < frames; ++i) {
    s.frames.push_back(sparse_frame(static_cast<std::int64_t>(i), static_cast<double>(i) / fps,
                                    0.25 * static_cast<double>(i)));
  }
  return s;
}

inline Image constant_image(int w, int h, int channels, std::uint8_t v) { return Image(w, h, channels, v); }

inline Image noise_image(int w, int h, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(0, 255);
  Image img(w, h, channels);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(u(rng));
  return img;
}

}  // namespace signpose::testing
