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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace signpose {

// Row-major 8-bit image with 1 (gray) or 3 (RGB) interleaved channels.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int w, int h, int c, std::uint8_t fill = 0);

  bool empty() const noexcept { return width == 0 || height == 0; }
  std::size_t index(int x, int y, int c = 0) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels) +
           static_cast<std::size_t>(c);
  }
  std::uint8_t& at(int x, int y, int c = 0) { return data[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c = 0) const { return data[index(x, y, c)]; }

  // Throws InvalidArgument unless |data| == width * height * channels and
  // channels is 1 or 3.
  void validate() const;

  friend bool operator==(const Image&, const Image&) = default;
};

// Rec. 601 luma as doubles in [0, 255], row-major.
std::vector<double> luma(const Image& img);

Image to_rgb(const Image& img);

// 8-bit non-interlaced PNG, gray or RGB.
std::string encode_png(const Image& img);
Image decode_png(std::string_view bytes);

Image read_png(const std::string& path);
void write_png(const Image& img, const std::string& path);

}  // namespace signpose
