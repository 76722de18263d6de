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

#include "signpose/mock_service.hpp"

#include <chrono>
#include <mutex>

#include "httplib.h"
#include "json.hpp"
#include "signpose/codec.hpp"
#include "signpose/embedding.hpp"
#include "signpose/error.hpp"
#include "signpose/image.hpp"

namespace signpose {

using nlohmann::json;

struct MockService::Impl {
  httplib::Server server;
  std::atomic<long> requests{0};
  std::atomic<long> failures{0};
  std::atomic<long> in_flight{0};
  std::atomic<long> max_in_flight{0};
  std::mutex embed_mutex;
  StubProvider stub;
};

namespace {

Image decode_field(const json& v) { return to_rgb(decode_png(base64_decode(v.get<std::string>()))); }

// Nearest-neighbour resample so any appearance image can be blended.
Image fit_to(const Image& img, int w, int h) {
  if (img.width == w && img.height == h) return img;
  Image out(w, h, 3);
  for (int y = 0; y < h; ++y) {
    const int sy = static_cast<int>(static_cast<long long>(y) * img.height / h);
    for (int x = 0; x < w; ++x) {
      const int sx = static_cast<int>(static_cast<long long>(x) * img.width / w);
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(sx, sy, c);
    }
  }
  return out;
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", message}}.dump(), "application/json");
}

}  // namespace

MockService::MockService(MockServiceOptions options) : options_(std::move(options)), impl_(std::make_unique<Impl>()) {
  if (options_.threads < 1) throw InvalidArgument("mock service: threads must be >= 1");
  const int threads = options_.threads;
  impl_->server.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };

  impl_->server.Post("/generate", [this](const httplib::Request& req, httplib::Response& res) {
    Impl& s = *impl_;
    const long now = ++s.in_flight;
    long peak = s.max_in_flight.load();
    while (now > peak && !s.max_in_flight.compare_exchange_weak(peak, now)) {
    }
    const long nth = s.requests++;
    struct Leave {
      std::atomic<long>& c;
      ~Leave() { --c; }
    } leave{s.in_flight};

    if (options_.delay_seconds > 0.0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(options_.delay_seconds));
    }
    if (nth < options_.fail_first) {
      ++s.failures;
      reply_error(res, 503, "injected failure");
      return;
    }
    try {
      const json doc = json::parse(req.body);
      const auto index = doc.at("frame_index").get<std::int64_t>();
      const int w = doc.at("width").get<int>();
      const int h = doc.at("height").get<int>();
      const json& control = doc.at("control");
      const json& cond = control.at("pose").is_null() ? control.at("canny") : control.at("pose");
      if (cond.is_null()) {
        reply_error(res, 400, "no pose or canny image attached");
        return;
      }
      const Image a = fit_to(decode_field(cond), w, h);
      const Image b = fit_to(decode_field(doc.at("appearance")), w, h);
      Image out(options_.wrong_size ? w + 1 : w, h, 3);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          for (int c = 0; c < 3; ++c) {
            out.at(x, y, c) = static_cast<std::uint8_t>((a.at(x, y, c) + b.at(x, y, c) + 1) >> 1);
          }
        }
      }
      res.set_content(json{{"frame_index", index}, {"image", base64_encode(encode_png(out))}}.dump(),
                      "application/json");
    } catch (const std::exception& e) {
      reply_error(res, 400, e.what());
    }
  });

  impl_->server.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      const json doc = json::parse(req.body);
      const std::string kind = doc.at("kind").get<std::string>();
      EmbeddingVector e;
      std::lock_guard lock(impl_->embed_mutex);
      if (kind == "image") {
        e = impl_->stub.embed_image(decode_png(base64_decode(doc.at("payload").get<std::string>())));
      } else if (kind == "text") {
        e = impl_->stub.embed_text(doc.at("payload").get<std::string>());
      } else {
        reply_error(res, 400, "unknown kind '" + kind + "'");
        return;
      }
      res.set_content(json{{"embedding", e.values}, {"provider_id", e.provider_id}}.dump(), "application/json");
    } catch (const std::exception& e) {
      reply_error(res, 400, e.what());
    }
  });

  impl_->server.Get("/stats", [this](const httplib::Request&, httplib::Response& res) {
    const MockStats st = stats();
    res.set_content(json{{"requests", st.requests},
                         {"failures_injected", st.failures_injected},
                         {"in_flight", st.in_flight},
                         {"max_in_flight", st.max_in_flight}}
                        .dump(),
                    "application/json");
  });
}

MockService::~MockService() { stop(); }

void MockService::start() {
  if (thread_.joinable()) return;
  port_ = options_.port == 0 ? impl_->server.bind_to_any_port(options_.host)
                             : (impl_->server.bind_to_port(options_.host, options_.port) ? options_.port : -1);
  if (port_ <= 0) throw IoError("mock service: cannot bind " + options_.host + ":" + std::to_string(options_.port));
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void MockService::serve_forever() {
  start();
  if (thread_.joinable()) thread_.join();
}

void MockService::stop() {
  if (impl_) impl_->server.stop();
  if (thread_.joinable() && thread_.get_id() != std::this_thread::get_id()) thread_.join();
}

std::string MockService::url() const { return "http://" + options_.host + ":" + std::to_string(port_); }

MockStats MockService::stats() const {
  return {impl_->requests.load(), impl_->failures.load(), impl_->in_flight.load(), impl_->max_in_flight.load()};
}

void MockService::reset_stats() {
  impl_->requests = 0;
  impl_->failures = 0;
  impl_->max_in_flight = impl_->in_flight.load();
}

}  // namespace signpose
