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

// Writes a synthetic keypoint document rendered from known model motion.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "signpose/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Synthetic signer keypoint fixture"};
  std::string output;
  std::size_t frames = 30;
  double fps = 30.0;
  double noise = 0.5;
  std::uint64_t seed = 7;
  std::string schema = "sparse";
  app.add_option("-o,--output", output, "keypoint file to write")->required();
  app.add_option("--frames", frames, "frame count")->check(CLI::PositiveNumber);
  app.add_option("--fps", fps, "frame rate")->check(CLI::PositiveNumber);
  app.add_option("--noise", noise, "keypoint noise sigma in pixels")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "random seed");
  app.add_option("--schema", schema, "sparse or dense")->check(CLI::IsMember({"sparse", "dense"}));
  CLI11_PARSE(app, argc, argv);

  try {
    const auto& model = signpose::default_upper_body_model();
    auto motion = signpose::synthetic_motion(model, signpose::default_synthetic_camera(), frames, fps, noise, seed);
    signpose::PoseSequence seq = std::move(motion.noisy);
    if (schema == "dense") seq = signpose::embed_dense(seq, signpose::default_schema_mapping());
    signpose::write_sequence_file(seq, output);
  } catch (const std::exception& e) {
    std::cerr << "signpose-fixture: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
