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

// Conditioning images: anti-aliased skeleton rasters and canny edge maps.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "signpose/image.hpp"
#include "signpose/kinematics.hpp"
#include "signpose/pose_io.hpp"
#include "signpose/retarget.hpp"

namespace signpose {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct SkeletonStyle {
  // Indexed by BodyPart: body, left hand, right hand, face.
  std::array<Rgb, 4> bone_colors{Rgb{255, 170, 0}, Rgb{0, 200, 255}, Rgb{255, 0, 170}, Rgb{255, 255, 255}};
  double line_width = 4.0;
  double keypoint_radius = 2.0;
  Rgb background{0, 0, 0};

  void validate() const;
  const Rgb& color(BodyPart part) const { return bone_colors[static_cast<std::size_t>(part)]; }
};

struct Segment {
  Vec2 a;
  Vec2 b;
  BodyPart part = BodyPart::Body;
};

struct Dot {
  Vec2 center;
  BodyPart part = BodyPart::Face;
};

// Segments are stroked with round caps, dots filled with keypoint_radius.
// Coverage of a pixel centre at distance d from the shape's core is
// clamp(r + 0.5 - d, 0, 1) and is blended over what is already drawn, in
// input order. Anything off-canvas is clipped.
Image rasterize(std::span<const Segment> segments, std::span<const Dot> dots, const SkeletonStyle& style,
                int width, int height);

// One segment per parent-child edge of the model, coloured by the child's
// part; face keypoints with confidence > 0 become dots. An empty joints2d
// draws no bones.
Image rasterize_skeleton(const KinematicModel& model, std::span<const Vec2> joints2d,
                         std::span<const Keypoint2D> face2d, const SkeletonStyle& style, int width,
                         int height);

struct CannyParams {
  double sigma = 1.4;
  double low = 50.0;   // gradient units, 0..255 scale
  double high = 150.0;

  void validate() const;
};

// Gaussian blur, Sobel gradient magnitudes rescaled so the image's strongest
// gradient reads 255, four-direction non-maximum suppression and 8-connected
// hysteresis. low/high are on that 0..255 scale. Output
// is single-channel with values {0, 255}. Throws InvalidArgument when the
// image is smaller than the blur kernel.
Image canny(const Image& img, const CannyParams& params);

struct ConditioningFrame {
  std::int64_t frame_index = 0;
  Image pose_image;   // RGB
  Image canny_image;  // gray
};

ConditioningFrame make_conditioning_frame(const KinematicModel& model, const FitResult& fit,
                                          std::span<const Keypoint2D> face2d, const Camera& camera,
                                          const SkeletonStyle& style, int width, int height,
                                          const CannyParams& canny_params);

struct ConditioningFiles {
  std::int64_t frame_index = 0;
  std::string pose_path;
  std::string canny_path;
};

std::string pose_frame_name(std::int64_t frame_index);
std::string canny_frame_name(std::int64_t frame_index);

// Writes pose_%06d.png / canny_%06d.png under dir plus frames.json listing
// frame order, canvas and parameters. Returns the written image paths.
std::vector<ConditioningFiles> write_conditioning_frames(const std::vector<ConditioningFrame>& frames,
                                                         const std::string& dir, const SkeletonStyle& style,
                                                         const CannyParams& canny_params);

}  // namespace signpose
