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

#include "http_util.hpp"

#include "signpose/error.hpp"

namespace signpose::detail {

HttpTarget split_http_url(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.compare(0, kScheme.size(), kScheme) != 0) {
    throw InvalidArgument("url '" + url + "': only http:// endpoints are supported");
  }
  const std::size_t slash = url.find('/', kScheme.size());
  HttpTarget t;
  t.origin = url.substr(0, slash);
  t.path = slash == std::string::npos ? "/" : url.substr(slash);
  if (t.origin.size() == kScheme.size()) throw InvalidArgument("url '" + url + "': missing host");
  return t;
}

std::string join_path(const std::string& base, const std::string& suffix) {
  std::string b = base;
  while (!b.empty() && b.back() == '/') b.pop_back();
  if (suffix.empty() || suffix.front() != '/') b.push_back('/');
  return b + suffix;
}

}  // namespace signpose::detail
