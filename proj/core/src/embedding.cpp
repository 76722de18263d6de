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

#include "signpose/embedding.hpp"

#include <cmath>

#include "http_util.hpp"
#include "httplib.h"
#include "json.hpp"
#include "signpose/codec.hpp"

namespace signpose {

using nlohmann::json;

namespace {

void normalize(std::vector<double>& v) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  if (n2 <= 0.0) return;
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : v) x *= inv;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

EmbeddingVector StubProvider::embed_image(const Image& img) {
  img.validate();
  constexpr int kGrid = 8;
  if (img.width < kGrid || img.height < kGrid) throw InvalidArgument("stub embedding: image smaller than 8x8");
  const std::vector<double> y = luma(img);
  EmbeddingVector e{std::vector<double>(kDim, 0.0), id()};
  for (int gy = 0; gy < kGrid; ++gy) {
    const int y0 = gy * img.height / kGrid, y1 = (gy + 1) * img.height / kGrid;
    for (int gx = 0; gx < kGrid; ++gx) {
      const int x0 = gx * img.width / kGrid, x1 = (gx + 1) * img.width / kGrid;
      double sum = 0.0;
      for (int r = y0; r < y1; ++r) {
        for (int c = x0; c < x1; ++c) sum += y[static_cast<std::size_t>(r) * static_cast<std::size_t>(img.width) + c];
      }
      e.values[static_cast<std::size_t>(gy * kGrid + gx)] = sum / ((y1 - y0) * (x1 - x0));
    }
  }
  normalize(e.values);
  return e;
}

EmbeddingVector StubProvider::embed_text(const std::string& text) {
  std::uint64_t state = fnv1a(text);
  EmbeddingVector e{std::vector<double>(kDim), id()};
  for (double& v : e.values) v = 2.0 * (static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
  normalize(e.values);
  return e;
}

RemoteProvider::RemoteProvider(std::string url, double timeout_seconds, std::optional<std::string> auth_token)
    : url_(std::move(url)), timeout_(timeout_seconds), auth_token_(std::move(auth_token)), last_id_("remote") {
  detail::split_http_url(url_);
  if (!(timeout_ > 0.0)) throw InvalidArgument("remote provider: timeout must be > 0");
}

std::string RemoteProvider::id() const { return last_id_; }

EmbeddingVector RemoteProvider::embed_image(const Image& img) { return request("image", base64_encode(encode_png(img))); }

EmbeddingVector RemoteProvider::embed_text(const std::string& text) { return request("text", text); }

EmbeddingVector RemoteProvider::request(const std::string& kind, const std::string& payload) {
  const detail::HttpTarget target = detail::split_http_url(url_);
  httplib::Client client(target.origin);
  const auto secs = static_cast<time_t>(timeout_);
  const auto usecs = static_cast<time_t>((timeout_ - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  httplib::Headers headers;
  if (auth_token_) headers.emplace("Authorization", "Bearer " + *auth_token_);
  const std::string body = json{{"kind", kind}, {"payload", payload}}.dump();
  auto res = client.Post(target.path, headers, body, "application/json");
  if (!res) throw ProviderUnavailable("embedding provider " + url_ + ": " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw Error("embedding provider " + url_ + ": HTTP " + std::to_string(res->status));
  }
  try {
    const json doc = json::parse(res->body);
    EmbeddingVector e;
    e.values = doc.at("embedding").get<std::vector<double>>();
    e.provider_id = doc.at("provider_id").get<std::string>();
    for (double v : e.values) {
      if (!std::isfinite(v)) throw Error("non-finite embedding value");
    }
    if (e.values.empty()) throw Error("empty embedding");
    last_id_ = e.provider_id;
    return e;
  } catch (const json::exception& ex) {
    throw Error("embedding provider " + url_ + ": malformed response: " + ex.what());
  }
}

std::unique_ptr<EmbeddingProvider> make_embedding_provider(const std::string& kind, const std::string& url,
                                                           double timeout_seconds) {
  if (kind == "none" || kind.empty()) return nullptr;
  if (kind == "stub") return std::make_unique<StubProvider>();
  if (kind == "remote") return std::make_unique<RemoteProvider>(url, timeout_seconds);
  throw InvalidArgument("unknown embedding provider '" + kind + "' (expected none, stub or remote)");
}

}  // namespace signpose
