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

#include "signpose/error.hpp"

#include <utility>

namespace signpose {
namespace {

std::string FormatParseError(const std::string& message,
                             const std::optional<std::int64_t>& frame,
                             const std::string& field_path) {
  std::string out;
  if (frame) out += "frame " + std::to_string(*frame) + ": ";
  if (!field_path.empty()) out += field_path + ": ";
  out += message;
  return out;
}

}  // namespace

ParseError::ParseError(std::string message, std::optional<std::int64_t> frame,
                       std::string field_path)
    : Error(FormatParseError(message, frame, field_path)),
      frame_(frame),
      field_path_(std::move(field_path)),
      detail_(std::move(message)) {}

}  // namespace signpose
