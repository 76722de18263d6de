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

#include "signpose/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "json.hpp"

namespace signpose {

using nlohmann::json;

namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;

std::array<double, kWindow> ssim_kernel() {
  std::array<double, kWindow> k{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    k[static_cast<std::size_t>(i)] = std::exp(-0.5 * d * d / (kWindowSigma * kWindowSigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable weighted sums over every valid window position.
std::vector<double> window_filter(const std::vector<double>& src, int w, int h) {
  static const auto k = ssim_kernel();
  const int ow = w - kWindow + 1, oh = h - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += k[static_cast<std::size_t>(i)] * src[static_cast<std::size_t>(y) * w + x + i];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * static_cast<std::size_t>(oh));
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < kWindow; ++i) acc += k[static_cast<std::size_t>(i)] * rows[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

Eigen::VectorXd as_vector(const EmbeddingVector& e) {
  return Eigen::Map<const Eigen::VectorXd>(e.values.data(), static_cast<Eigen::Index>(e.values.size()));
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<double>();
}

}  // namespace

double ssim(const Image& a, const Image& b) {
  a.validate();
  b.validate();
  if (a.width != b.width || a.height != b.height) {
    throw InvalidArgument("ssim: dimension mismatch (" + std::to_string(a.width) + "x" + std::to_string(a.height) +
                          " vs " + std::to_string(b.width) + "x" + std::to_string(b.height) + ")");
  }
  if (a.width < kWindow || a.height < kWindow) throw InvalidArgument("ssim: image smaller than the 11x11 window");
  const int w = a.width, h = a.height;
  const std::vector<double> la = luma(a), lb = luma(b);
  std::vector<double> aa(la.size()), bb(la.size()), ab(la.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    aa[i] = la[i] * la[i];
    bb[i] = lb[i] * lb[i];
    ab[i] = la[i] * lb[i];
  }
  const auto mu_a = window_filter(la, w, h), mu_b = window_filter(lb, w, h);
  const auto e_aa = window_filter(aa, w, h), e_bb = window_filter(bb, w, h), e_ab = window_filter(ab, w, h);
  constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i], mb = mu_b[i];
    const double va = e_aa[i] - ma * ma, vb = e_bb[i] - mb * mb, cov = e_ab[i] - ma * mb;
    sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return sum / static_cast<double>(mu_a.size());
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

TemporalSsim temporal_ssim(const std::vector<Image>& frames) {
  if (frames.size() < 2) throw InvalidArgument("temporal_ssim: need at least 2 frames");
  TemporalSsim out;
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) out.per_pair.push_back(ssim(frames[i], frames[i + 1]));
  out.mean = mean_of(out.per_pair);
  return out;
}

double directional_similarity(const EmbeddingVector& e_is, const EmbeddingVector& e_it,
                              const EmbeddingVector& e_ds, const EmbeddingVector& e_dt) {
  const std::size_t n = e_is.values.size();
  if (e_it.values.size() != n || e_ds.values.size() != n || e_dt.values.size() != n) {
    throw InvalidArgument("directional_similarity: embedding length mismatch");
  }
  if (e_it.provider_id != e_is.provider_id || e_ds.provider_id != e_is.provider_id ||
      e_dt.provider_id != e_is.provider_id) {
    throw InvalidArgument("directional_similarity: embeddings come from different providers");
  }
  const Eigen::VectorXd di = as_vector(e_it) - as_vector(e_is);
  const Eigen::VectorXd dd = as_vector(e_dt) - as_vector(e_ds);
  const double ni = di.norm(), nd = dd.norm();
  if (ni < 1e-12 || nd < 1e-12) return 0.0;
  return std::clamp(di.dot(dd) / (ni * nd), -1.0, 1.0);
}

GaussianStats gaussian_stats(const std::vector<EmbeddingVector>& embeddings) {
  if (embeddings.size() < 2) throw InvalidArgument("gaussian_stats: need at least 2 samples");
  const std::size_t d = embeddings.front().values.size();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(embeddings.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    if (embeddings[i].values.size() != d) throw InvalidArgument("gaussian_stats: embedding length mismatch");
    x.row(static_cast<Eigen::Index>(i)) = as_vector(embeddings[i]).transpose();
  }
  GaussianStats s;
  s.sample_count = embeddings.size();
  s.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - s.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(embeddings.size() - 1);
  s.covariance = 0.5 * (cov + cov.transpose());
  return s;
}

double frechet_distance(const GaussianStats& p, const GaussianStats& q) {
  if (p.mean.size() != q.mean.size() || p.covariance.rows() != p.mean.size() ||
      q.covariance.rows() != q.mean.size() || p.covariance.cols() != p.mean.size() ||
      q.covariance.cols() != q.mean.size()) {
    throw InvalidArgument("frechet_distance: dimension mismatch");
  }
  if (!p.mean.allFinite() || !q.mean.allFinite() || !p.covariance.allFinite() || !q.covariance.allFinite()) {
    throw InvalidArgument("frechet_distance: non-finite statistics");
  }
  const Eigen::MatrixXd rp = psd_sqrt(p.covariance);
  const Eigen::MatrixXd inner = rp * q.covariance * rp;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (inner + inner.transpose()), Eigen::EigenvaluesOnly);
  const double tr_sqrt = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  const double d = (p.mean - q.mean).squaredNorm() + p.covariance.trace() + q.covariance.trace() - 2.0 * tr_sqrt;
  return std::max(d, 0.0);
}

MetricsReport evaluate_video(const std::vector<Image>& generated, const std::vector<Image>& source,
                             const std::string& d_s, const std::string& d_t, EmbeddingProvider* provider) {
  if (generated.size() < 2) throw InvalidArgument("evaluate_video: need at least 2 generated frames");
  MetricsReport r;
  const TemporalSsim ts = temporal_ssim(generated);
  r.temporal_ssim_mean = ts.mean;
  r.temporal_ssim_per_pair = ts.per_pair;
  if (!provider) {
    r.provider_note = "no embedding provider configured";
    return r;
  }
  if (source.size() != generated.size()) {
    throw InvalidArgument("evaluate_video: " + std::to_string(source.size()) + " source frames for " +
                          std::to_string(generated.size()) + " generated frames");
  }
  std::size_t frame = 0;
  try {
    const EmbeddingVector e_ds = provider->embed_text(d_s);
    const EmbeddingVector e_dt = provider->embed_text(d_t);
    std::vector<EmbeddingVector> src_e, gen_e;
    for (frame = 0; frame < generated.size(); ++frame) {
      src_e.push_back(provider->embed_image(source[frame]));
      gen_e.push_back(provider->embed_image(generated[frame]));
      r.ds_per_frame.push_back(directional_similarity(src_e.back(), gen_e.back(), e_ds, e_dt));
    }
    r.ds_mean = mean_of(r.ds_per_frame);
    r.frechet = frechet_distance(gaussian_stats(src_e), gaussian_stats(gen_e));
    r.provider_id = provider->id();
  } catch (const ProviderUnavailable& e) {
    r.ds_per_frame.clear();
    r.ds_mean.reset();
    r.frechet.reset();
    r.provider_note = "frame " + std::to_string(frame) + ": " + e.what();
  } catch (const Error& e) {
    throw Error("evaluate_video: frame " + std::to_string(frame) + ": " + e.what());
  }
  return r;
}

std::string write_report(const MetricsReport& r) {
  json doc = {{"temporal_ssim_mean", r.temporal_ssim_mean},
              {"ds_mean", optional_number(r.ds_mean)},
              {"frechet", optional_number(r.frechet)},
              {"jitter", optional_number(r.jitter)},
              {"provider_id", r.provider_id},
              {"provider_note", r.provider_note},
              {"per_frame", {{"temporal_ssim", r.temporal_ssim_per_pair}, {"ds", r.ds_per_frame}}}};
  return doc.dump(2) + "\n";
}

MetricsReport parse_report(std::string_view bytes) {
  try {
    const json doc = json::parse(bytes);
    MetricsReport r;
    r.temporal_ssim_mean = doc.at("temporal_ssim_mean").get<double>();
    r.ds_mean = read_optional(doc, "ds_mean");
    r.frechet = read_optional(doc, "frechet");
    r.jitter = read_optional(doc, "jitter");
    r.provider_id = doc.value("provider_id", std::string());
    r.provider_note = doc.value("provider_note", std::string());
    r.temporal_ssim_per_pair = doc.at("per_frame").at("temporal_ssim").get<std::vector<double>>();
    r.ds_per_frame = doc.at("per_frame").at("ds").get<std::vector<double>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("metrics report: ") + e.what());
  }
}

}  // namespace signpose
