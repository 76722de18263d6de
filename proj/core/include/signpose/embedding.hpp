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

// Pluggable image / text encoders used by the metrics module.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "signpose/error.hpp"
#include "signpose/image.hpp"

namespace signpose {

struct EmbeddingVector {
  std::vector<double> values;
  std::string provider_id;
};

// The provider could not be reached at all (as opposed to answering
// with something malformed).
class ProviderUnavailable : public Error {
 public:
  using Error::Error;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string id() const = 0;
  virtual EmbeddingVector embed_image(const Image& img) = 0;
  virtual EmbeddingVector embed_text(const std::string& text) = 0;
};

// Deterministic stand-in encoder. Images: luma box-averaged onto an 8x8
// grid, flattened row-major and L2-normalised (an all-black image stays the
// zero vector). Text: a unit vector drawn from a generator seeded by the
// FNV-1a hash of the string.
class StubProvider final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDim = 64;
  std::string id() const override { return "stub-luma8x8"; }
  EmbeddingVector embed_image(const Image& img) override;
  EmbeddingVector embed_text(const std::string& text) override;
};

// Speaks {"kind": "image"|"text", "payload": ...} -> {"embedding": [...],
// "provider_id": "..."} over HTTP POST to url, one item per call.
class RemoteProvider final : public EmbeddingProvider {
 public:
  explicit RemoteProvider(std::string url, double timeout_seconds = 30.0,
                          std::optional<std::string> auth_token = std::nullopt);
  std::string id() const override;
  EmbeddingVector embed_image(const Image& img) override;
  EmbeddingVector embed_text(const std::string& text) override;

 private:
  EmbeddingVector request(const std::string& kind, const std::string& payload);

  std::string url_;
  double timeout_;
  std::optional<std::string> auth_token_;
  std::string last_id_;
};

// "none" yields nullptr, "stub" the stub, "remote" a RemoteProvider on url.
std::unique_ptr<EmbeddingProvider> make_embedding_provider(const std::string& kind, const std::string& url = {},
                                                           double timeout_seconds = 30.0);

}  // namespace signpose
