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

// Video quality metrics: consecutive-frame SSIM, directional similarity and
// Frechet distance between Gaussian fits of embedding sets.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "signpose/embedding.hpp"
#include "signpose/image.hpp"

namespace signpose {

// Mean SSIM over all fully-contained 11x11 Gaussian windows (sigma 1.5) on
// luma, with C1 = (0.01*255)^2 and C2 = (0.03*255)^2.
double ssim(const Image& a, const Image& b);

struct TemporalSsim {
  double mean = 0.0;
  std::vector<double> per_pair;
};

TemporalSsim temporal_ssim(const std::vector<Image>& frames);

// cos((e_it - e_is), (e_dt - e_ds)); 0 when either difference is
// (numerically) zero.
double directional_similarity(const EmbeddingVector& e_is, const EmbeddingVector& e_it,
                              const EmbeddingVector& e_ds, const EmbeddingVector& e_dt);

struct GaussianStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;  // unbiased
  std::size_t sample_count = 0;
};

GaussianStats gaussian_stats(const std::vector<EmbeddingVector>& embeddings);

double frechet_distance(const GaussianStats& p, const GaussianStats& q);

// Arithmetic mean, summed in order.
double mean_of(const std::vector<double>& v);

struct MetricsReport {
  double temporal_ssim_mean = 0.0;
  std::vector<double> temporal_ssim_per_pair;
  std::optional<double> ds_mean;  // absent when no provider answered
  std::vector<double> ds_per_frame;
  std::optional<double> frechet;
  std::optional<double> jitter;  // pixels / frame of the driving keypoints
  std::string provider_id;
  std::string provider_note;  // why DS / Frechet are absent
};

// source may be empty when no provider is given; otherwise it must match
// generated frame for frame.
MetricsReport evaluate_video(const std::vector<Image>& generated, const std::vector<Image>& source,
                             const std::string& d_s, const std::string& d_t, EmbeddingProvider* provider);

std::string write_report(const MetricsReport& report);
MetricsReport parse_report(std::string_view bytes);

}  // namespace signpose
