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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace signpose {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invariant-violating input document. Carries the offending
// frame (when known) and a dotted field path such as "frames[5].body".
class ParseError : public Error {
 public:
  ParseError(std::string message, std::optional<std::int64_t> frame = std::nullopt,
             std::string field_path = {});

  const std::optional<std::int64_t>& frame() const noexcept { return frame_; }
  const std::string& field_path() const noexcept { return field_path_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::optional<std::int64_t> frame_;
  std::string field_path_;
  std::string detail_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace signpose
