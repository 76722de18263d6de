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

#include <cmath>

#include "signpose/error.hpp"
#include "signpose/render.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace signpose {
namespace {

using testing::as_grid;
using testing::oracle_canny;

void expect_matches_oracle(const Image& img, const CannyParams& p) {
  const Image got = canny(img, p);
  const auto want = oracle_canny(as_grid(img), p.sigma, p.low, p.high);
  int mismatches = 0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) mismatches += got.at(x, y) != want[y][x];
  }
  EXPECT_EQ(mismatches, 0);
}

Image step_image() {
  Image img(16, 16, 1, 0);
  for (int y = 0; y < 16; ++y) {
    for (int x = 8; x < 16; ++x) img.at(x, y) = 255;
  }
  return img;
}

TEST(Canny, StepEdgeOracleIsColumnEight) {
  const auto want = oracle_canny(as_grid(step_image()), 1.0, 20.0, 60.0);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) EXPECT_EQ(want[y][x], x == 8 ? 255 : 0) << x << "," << y;
  }
}

TEST(Canny, StepEdgeEqualsOracle) {
  const Image out = canny(step_image(), CannyParams{1.0, 20.0, 60.0});
  ASSERT_EQ(out.channels, 1);
  const auto want = oracle_canny(as_grid(step_image()), 1.0, 20.0, 60.0);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) EXPECT_EQ(out.at(x, y), want[y][x]) << x << "," << y;
  }
}

TEST(Canny, ConstantImageHasNoEdges) {
  for (std::uint8_t v : {0, 77, 255}) {
    const Image out = canny(testing::constant_image(20, 20, 3, v), CannyParams{});
    for (auto px : out.data) EXPECT_EQ(px, 0);
  }
}

TEST(Canny, ThresholdsAboveMaxResponse) {
  // The strongest gradient reads exactly 255.
  const Image out = canny(step_image(), CannyParams{1.0, 256.0, 300.0});
  for (auto px : out.data) EXPECT_EQ(px, 0);
}

TEST(Canny, OutputIsBinary) {
  const Image out = canny(testing::noise_image(40, 30, 3, 4), CannyParams{1.0, 10.0, 30.0});
  for (auto px : out.data) EXPECT_TRUE(px == 0 || px == 255);
}

TEST(Canny, MatchesOracleOnDiscAndNoise) {
  Image disc(32, 32, 3, 20);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      if (std::hypot(x - 15.3, y - 16.7) < 9.0) {
        disc.at(x, y, 0) = 230;
        disc.at(x, y, 1) = 120;
        disc.at(x, y, 2) = 40;
      }
    }
  }
  expect_matches_oracle(disc, CannyParams{1.4, 50.0, 150.0});
  expect_matches_oracle(disc, CannyParams{0.8, 10.0, 40.0});
  expect_matches_oracle(testing::noise_image(24, 20, 1, 17), CannyParams{1.0, 20.0, 45.0});
}

TEST(Canny, RgbUsesLuma) {
  Image rgb(20, 20, 3, 0);
  Image gray(20, 20, 1, 0);
  for (int y = 0; y < 20; ++y) {
    for (int x = 10; x < 20; ++x) {
      rgb.at(x, y, 0) = rgb.at(x, y, 1) = rgb.at(x, y, 2) = 200;
      gray.at(x, y) = 200;
    }
  }
  EXPECT_EQ(canny(rgb, CannyParams{}), canny(gray, CannyParams{}));
}

TEST(Canny, ImageSmallerThanKernel) {
  EXPECT_THROW(canny(Image(8, 8, 1), CannyParams{1.4, 50, 150}), InvalidArgument);  // 11 taps
  EXPECT_NO_THROW(canny(Image(11, 11, 1), CannyParams{1.4, 50, 150}));
}

TEST(Canny, ParameterValidation) {
  EXPECT_THROW(canny(step_image(), CannyParams{1.0, 60.0, 20.0}), InvalidArgument);
  EXPECT_THROW(canny(step_image(), CannyParams{-1.0, 20.0, 60.0}), InvalidArgument);
  EXPECT_THROW(canny(step_image(), CannyParams{1.0, -5.0, 60.0}), InvalidArgument);
}

}  // namespace
}  // namespace signpose
