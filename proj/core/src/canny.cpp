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
#include <cmath>
#include <numbers>

#include "signpose/error.hpp"
#include "signpose/render.hpp"

namespace signpose {

void CannyParams::validate() const {
  if (!std::isfinite(sigma) || sigma < 0.0) throw InvalidArgument("canny: sigma must be >= 0");
  if (!std::isfinite(low) || !std::isfinite(high) || low < 0.0 || high < low) {
    throw InvalidArgument("canny: thresholds must satisfy high >= low >= 0");
  }
}

Image canny(const Image& img, const CannyParams& params) {
  params.validate();
  img.validate();
  const int w = img.width;
  const int h = img.height;
  const int radius = static_cast<int>(std::ceil(3.0 * params.sigma));
  const int ksize = 2 * radius + 1;
  if (w < ksize || h < ksize || w < 3 || h < 3) {
    throw InvalidArgument("canny: image " + std::to_string(w) + "x" + std::to_string(h) +
                          " is smaller than the " + std::to_string(ksize) + "-tap blur kernel");
  }

  std::vector<double> kernel(static_cast<std::size_t>(ksize), 1.0);
  if (radius > 0) {
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
      const double v = std::exp(-0.5 * i * i / (params.sigma * params.sigma));
      kernel[static_cast<std::size_t>(i + radius)] = v;
      sum += v;
    }
    for (double& v : kernel) v /= sum;
  }

  const auto at = [w](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + x; };
  const std::vector<double> src = luma(img);
  std::vector<double> tmp(src.size()), blur(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i + radius)] * src[at(std::clamp(x + i, 0, w - 1), y)];
      }
      tmp[at(x, y)] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i + radius)] * tmp[at(x, std::clamp(y + i, 0, h - 1))];
      }
      blur[at(x, y)] = acc;
    }
  }

  std::vector<double> mag(src.size()), gx(src.size()), gy(src.size());
  for (int y = 0; y < h; ++y) {
    const int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
      const double dx = (blur[at(xp, ym)] + 2.0 * blur[at(xp, y)] + blur[at(xp, yp)] - blur[at(xm, ym)] -
                         2.0 * blur[at(xm, y)] - blur[at(xm, yp)]) /
                        4.0;
      const double dy = (blur[at(xm, yp)] + 2.0 * blur[at(x, yp)] + blur[at(xp, yp)] - blur[at(xm, ym)] -
                         2.0 * blur[at(x, ym)] - blur[at(xp, ym)]) /
                        4.0;
      gx[at(x, y)] = dx;
      gy[at(x, y)] = dy;
      mag[at(x, y)] = std::hypot(dx, dy);
    }
  }
  // Thresholds are on a 0..255 scale relative to the strongest gradient.
  // Below kFlat the image is flat up to blur rounding and stays unscaled.
  constexpr double kFlat = 1e-6;
  const double peak = *std::max_element(mag.begin(), mag.end());
  if (peak > kFlat) {
    const double gain = 255.0 / peak;
    for (double& m : mag) m *= gain;
  }

  // Candidates survive suppression when strictly above the neighbour ahead
  // along the gradient and not below the one behind, so a two-pixel plateau
  // keeps exactly one pixel.
  const auto mag_at = [&](int x, int y) { return (x < 0 || y < 0 || x >= w || y >= h) ? 0.0 : mag[at(x, y)]; };
  std::vector<std::uint8_t> klass(src.size(), 0);  // 0 none, 1 weak, 2 strong
  std::vector<std::size_t> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = mag[at(x, y)];
      if (m <= 0.0 || m < params.low) continue;
      double angle = std::atan2(gy[at(x, y)], gx[at(x, y)]) * 180.0 / std::numbers::pi;
      if (angle < 0.0) angle += 180.0;
      int dx = 1, dy = 0;
      if (angle >= 22.5 && angle < 67.5) {
        dx = 1, dy = 1;
      } else if (angle >= 67.5 && angle < 112.5) {
        dx = 0, dy = 1;
      } else if (angle >= 112.5 && angle < 157.5) {
        dx = -1, dy = 1;
      }
      const double tol = 1e-9 * std::max(1.0, m);
      const double fwd = mag_at(x + dx, y + dy);
      const double bwd = mag_at(x - dx, y - dy);
      if (!(m > fwd + tol && m >= bwd - tol)) continue;
      if (m >= params.high) {
        klass[at(x, y)] = 2;
        stack.push_back(at(x, y));
      } else {
        klass[at(x, y)] = 1;
      }
    }
  }

  Image out(w, h, 1);
  for (std::size_t i : stack) out.data[i] = 255;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(i % static_cast<std::size_t>(w));
    const int y = static_cast<int>(i / static_cast<std::size_t>(w));
    for (int oy = -1; oy <= 1; ++oy) {
      for (int ox = -1; ox <= 1; ++ox) {
        const int nx = x + ox, ny = y + oy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t n = at(nx, ny);
        if (klass[n] == 1 && out.data[n] == 0) {
          out.data[n] = 255;
          stack.push_back(n);
        }
      }
    }
  }
  return out;
}

}  // namespace signpose
