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

#include "signpose/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "json.hpp"

#include "signpose/error.hpp"

namespace signpose {

using nlohmann::json;

void SkeletonStyle::validate() const {
  if (!std::isfinite(line_width) || line_width < 1.0) throw InvalidArgument("style: line_width must be >= 1");
  if (!std::isfinite(keypoint_radius) || keypoint_radius < 0.0) {
    throw InvalidArgument("style: keypoint_radius must be >= 0");
  }
}

namespace {

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Blends a capsule of the given radius around segment ab into the canvas.
void stroke(Image& img, const Vec2& a, const Vec2& b, double radius, const Rgb& color) {
  if (!a.allFinite() || !b.allFinite()) return;
  const double reach = radius + 0.5;
  const double x0 = std::floor(std::min(a.x(), b.x()) - reach);
  const double x1 = std::ceil(std::max(a.x(), b.x()) + reach);
  const double y0 = std::floor(std::min(a.y(), b.y()) - reach);
  const double y1 = std::ceil(std::max(a.y(), b.y()) + reach);
  if (x1 < 0.0 || y1 < 0.0 || x0 >= img.width || y0 >= img.height) return;
  const int xs = static_cast<int>(std::max(0.0, x0));
  const int xe = static_cast<int>(std::min<double>(img.width - 1, x1));
  const int ys = static_cast<int>(std::max(0.0, y0));
  const int ye = static_cast<int>(std::min<double>(img.height - 1, y1));
  const std::array<double, 3> rgb{static_cast<double>(color.r), static_cast<double>(color.g),
                                  static_cast<double>(color.b)};
  for (int y = ys; y <= ye; ++y) {
    for (int x = xs; x <= xe; ++x) {
      const double d = segment_distance(Vec2(x, y), a, b);
      const double c = std::clamp(reach - d, 0.0, 1.0);
      if (c <= 0.0) continue;
      for (int k = 0; k < 3; ++k) {
        std::uint8_t& px = img.at(x, y, k);
        px = static_cast<std::uint8_t>(std::lround(px * (1.0 - c) + rgb[static_cast<std::size_t>(k)] * c));
      }
    }
  }
}

}  // namespace

Image rasterize(std::span<const Segment> segments, std::span<const Dot> dots, const SkeletonStyle& style,
                int width, int height) {
  style.validate();
  if (width <= 0 || height <= 0) throw InvalidArgument("rasterize: zero-sized canvas");
  Image img(width, height, 3);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    img.data[i] = style.background.r;
    img.data[i + 1] = style.background.g;
    img.data[i + 2] = style.background.b;
  }
  for (const Segment& s : segments) stroke(img, s.a, s.b, 0.5 * style.line_width, style.color(s.part));
  if (style.keypoint_radius > 0.0) {
    for (const Dot& d : dots) stroke(img, d.center, d.center, style.keypoint_radius, style.color(d.part));
  }
  return img;
}

Image rasterize_skeleton(const KinematicModel& model, std::span<const Vec2> joints2d,
                         std::span<const Keypoint2D> face2d, const SkeletonStyle& style, int width,
                         int height) {
  std::vector<Segment> segments;
  if (!joints2d.empty()) {
    if (joints2d.size() != model.joint_count()) {
      throw InvalidArgument("rasterize_skeleton: expected " + std::to_string(model.joint_count()) +
                            " joints, got " + std::to_string(joints2d.size()));
    }
    for (int j : model.topological_order()) {
      const int p = model.parents[static_cast<std::size_t>(j)];
      if (p < 0) continue;
      segments.push_back({joints2d[static_cast<std::size_t>(p)], joints2d[static_cast<std::size_t>(j)],
                          model.parts[static_cast<std::size_t>(j)]});
    }
  }
  std::vector<Dot> dots;
  for (const Keypoint2D& k : face2d) {
    if (k.confidence > 0.0) dots.push_back({Vec2(k.x, k.y), BodyPart::Face});
  }
  return rasterize(segments, dots, style, width, height);
}

ConditioningFrame make_conditioning_frame(const KinematicModel& model, const FitResult& fit,
                                          std::span<const Keypoint2D> face2d, const Camera& camera,
                                          const SkeletonStyle& style, int width, int height,
                                          const CannyParams& canny_params) {
  ConditioningFrame f;
  f.frame_index = fit.frame_index;
  const std::vector<Vec2> joints2d = project(camera, fit.joints3d);
  f.pose_image = rasterize_skeleton(model, joints2d, face2d, style, width, height);
  f.canny_image = canny(f.pose_image, canny_params);
  return f;
}

std::string pose_frame_name(std::int64_t frame_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "pose_%06lld.png", static_cast<long long>(frame_index));
  return buf;
}

std::string canny_frame_name(std::int64_t frame_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "canny_%06lld.png", static_cast<long long>(frame_index));
  return buf;
}

std::vector<ConditioningFiles> write_conditioning_frames(const std::vector<ConditioningFrame>& frames,
                                                         const std::string& dir, const SkeletonStyle& style,
                                                         const CannyParams& canny_params) {
  namespace fs = std::filesystem;
  std::vector<ConditioningFiles> files;
  json listing = json::array();
  for (const ConditioningFrame& f : frames) {
    ConditioningFiles cf{f.frame_index, (fs::path(dir) / pose_frame_name(f.frame_index)).string(),
                         (fs::path(dir) / canny_frame_name(f.frame_index)).string()};
    write_png(f.pose_image, cf.pose_path);
    write_png(f.canny_image, cf.canny_path);
    listing.push_back({{"index", f.frame_index},
                       {"pose", pose_frame_name(f.frame_index)},
                       {"canny", canny_frame_name(f.frame_index)}});
    files.push_back(std::move(cf));
  }
  json colors = json::array();
  for (const Rgb& c : style.bone_colors) colors.push_back({c.r, c.g, c.b});
  json doc = {{"frames", listing},
              {"width", frames.empty() ? 0 : frames.front().pose_image.width},
              {"height", frames.empty() ? 0 : frames.front().pose_image.height},
              {"style",
               {{"bone_colors", colors},
                {"line_width", style.line_width},
                {"keypoint_radius", style.keypoint_radius},
                {"background", {style.background.r, style.background.g, style.background.b}}}},
              {"canny", {{"sigma", canny_params.sigma}, {"low", canny_params.low}, {"high", canny_params.high}}}};
  write_file((fs::path(dir) / "frames.json").string(), doc.dump(2) + "\n");
  return files;
}

}  // namespace signpose
