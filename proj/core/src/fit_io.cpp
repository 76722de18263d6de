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

#include "json.hpp"
#include "signpose/error.hpp"
#include "signpose/retarget.hpp"

namespace signpose {

using nlohmann::json;

namespace {

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected [x, y, z]", std::nullopt, path);
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

std::string write_fits(const std::vector<FitResult>& fits) {
  json frames = json::array();
  for (const FitResult& r : fits) {
    json theta = json::array();
    for (const Vec3& t : r.pose.theta) theta.push_back(vec(t));
    json joints = json::array();
    for (const Vec3& p : r.joints3d) joints.push_back(vec(p));
    frames.push_back({{"index", r.frame_index},
                      {"t", r.timestamp},
                      {"theta", theta},
                      {"root_rotation", vec(r.pose.root_rotation)},
                      {"root_translation", vec(r.pose.root_translation)},
                      {"camera", {{"scale", r.camera.scale}, {"offset", {r.camera.offset.x(), r.camera.offset.y()}}}},
                      {"joints3d", joints},
                      {"residual", r.residual},
                      {"reprojection_rmse", r.reprojection_rmse},
                      {"converged", r.converged},
                      {"iterations", r.iterations_used}});
  }
  return json{{"frames", frames}}.dump() + "\n";
}

std::vector<FitResult> parse_fits(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed fit document: ") + e.what());
  }
  auto frames = doc.find("frames");
  if (!doc.is_object() || frames == doc.end() || !frames->is_array()) {
    throw ParseError("missing or non-array field", std::nullopt, "frames");
  }
  std::vector<FitResult> out;
  for (std::size_t i = 0; i < frames->size(); ++i) {
    const json& f = (*frames)[i];
    const std::string path = "frames[" + std::to_string(i) + "]";
    try {
      FitResult r;
      r.frame_index = f.at("index").get<std::int64_t>();
      r.timestamp = f.at("t").get<double>();
      for (const json& t : f.at("theta")) r.pose.theta.push_back(vec3(t, path + ".theta"));
      r.pose.root_rotation = vec3(f.at("root_rotation"), path + ".root_rotation");
      r.pose.root_translation = vec3(f.at("root_translation"), path + ".root_translation");
      const json& cam = f.at("camera");
      r.camera.scale = cam.at("scale").get<double>();
      r.camera.offset = Vec2(cam.at("offset").at(0).get<double>(), cam.at("offset").at(1).get<double>());
      for (const json& p : f.at("joints3d")) r.joints3d.push_back(vec3(p, path + ".joints3d"));
      r.residual = f.at("residual").get<double>();
      r.reprojection_rmse = f.at("reprojection_rmse").get<double>();
      r.converged = f.at("converged").get<bool>();
      r.iterations_used = f.at("iterations").get<int>();
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), std::nullopt, path);
    }
  }
  return out;
}

}  // namespace signpose
