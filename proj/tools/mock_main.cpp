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

// Local echo-blend generation / stub embedding service.

#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "signpose/mock_service.hpp"

namespace {
std::atomic<bool> g_stop{false};
void on_signal(int) { g_stop = true; }
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mock generation service (echo-blend)"};
  signpose::MockServiceOptions opts;
  opts.port = 8765;
  app.add_option("--host", opts.host, "bind address");
  app.add_option("--port", opts.port, "port, 0 for any free port");
  app.add_option("--fail-first", opts.fail_first, "answer the first N /generate requests with 503");
  app.add_flag("--wrong-size", opts.wrong_size, "return images one pixel too wide");
  app.add_option("--delay", opts.delay_seconds, "seconds to wait per /generate request");
  app.add_option("--threads", opts.threads, "worker threads");
  CLI11_PARSE(app, argc, argv);

  try {
    signpose::MockService service(opts);
    service.start();
    std::cout << "listening on " << service.url() << std::endl;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    service.stop();
    const auto st = service.stats();
    std::cout << "requests " << st.requests << ", peak in flight " << st.max_in_flight << std::endl;
  } catch (const std::exception& e) {
    std::cerr << "signpose-mock: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
