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

#include <string>

namespace signpose::detail {

struct HttpTarget {
  std::string origin;  // scheme://host[:port]
  std::string path;    // always starts with '/'
};

// Splits an http:// URL; throws InvalidArgument for anything else.
HttpTarget split_http_url(const std::string& url);

// Joins a base path and a suffix without doubling the slash.
std::string join_path(const std::string& base, const std::string& suffix);

}  // namespace signpose::detail
