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

// signpose <stage|pipeline> --config <file> [--stage-override key=value]...

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "signpose/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sign-language pose pipeline"};
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("command", command, "ingest, filter, retarget, render, generate, evaluate or pipeline")
      ->required()
      ->check(CLI::IsMember({"ingest", "filter", "retarget", "render", "generate", "evaluate", "pipeline"}));
  app.add_option("--config", config_path, "pipeline configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--stage-override", overrides, "dotted.key=value applied on top of the config")
      ->take_all()
      ->expected(1, -1);
  CLI11_PARSE(app, argc, argv);

  signpose::PipelineConfig cfg;
  try {
    cfg = signpose::load_config(config_path, overrides);
  } catch (const std::exception& e) {
    std::cerr << "signpose: config: " << e.what() << "\n";
    return 2;
  }

  try {
    std::vector<signpose::ManifestEntry> entries;
    if (command == "pipeline") {
      entries = signpose::run_pipeline(cfg);
    } else {
      entries.push_back(signpose::run_stage(signpose::stage_from_string(command), cfg));
    }
    for (const auto& e : entries) std::cout << e.to_json_line() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "signpose: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
