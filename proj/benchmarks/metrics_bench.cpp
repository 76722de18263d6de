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

#include <benchmark/benchmark.h>

#include <random>

#include "signpose/metrics.hpp"

namespace {

using namespace signpose;

Image noise(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(0, 255);
  Image img(size, size, 3);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(u(rng));
  return img;
}

void BM_Ssim(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const Image a = noise(size, 1), b = noise(size, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ssim(a, b));
}
BENCHMARK(BM_Ssim)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Frechet(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  auto sample = [&](double shift) {
    std::vector<EmbeddingVector> e;
    for (std::size_t i = 0; i < 2 * dim; ++i) {
      EmbeddingVector v{std::vector<double>(dim), "bench"};
      for (double& x : v.values) x = n(rng) + shift;
      e.push_back(std::move(v));
    }
    return gaussian_stats(e);
  };
  const GaussianStats p = sample(0.0), q = sample(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(frechet_distance(p, q));
}
BENCHMARK(BM_Frechet)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
