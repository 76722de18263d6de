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

// In-process stand-in for the generation service. POST /generate answers
// with the per-pixel blend (pose + appearance + 1) >> 1 (canny replaces pose
// when no pose image is attached); POST /embed serves stub embeddings;
// GET /stats reports request counters and the peak number of requests
// handled concurrently.

#include <atomic>
#include <memory>
#include <string>
#include <thread>

namespace signpose {

struct MockServiceOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  int fail_first = 0;  // the first N /generate requests get HTTP 503
  bool wrong_size = false;  // answer with an image one pixel too wide
  double delay_seconds = 0.0;  // per /generate request
  int threads = 16;
};

struct MockStats {
  long requests = 0;
  long failures_injected = 0;
  long in_flight = 0;
  long max_in_flight = 0;
};

class MockService {
 public:
  explicit MockService(MockServiceOptions options = {});
  ~MockService();
  MockService(const MockService&) = delete;
  MockService& operator=(const MockService&) = delete;

  // Binds and starts serving on a background thread.
  void start();
  void stop();
  // Blocks on the calling thread until stop() is called from elsewhere.
  void serve_forever();

  int port() const noexcept { return port_; }
  std::string url() const;
  MockStats stats() const;
  void reset_stats();

 private:
  struct Impl;
  MockServiceOptions options_;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace signpose
