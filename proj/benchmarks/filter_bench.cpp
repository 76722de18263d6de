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

#include "signpose/synthetic.hpp"
#include "signpose/temporal_filter.hpp"

namespace {

void BM_OneEuroStep(benchmark::State& state) {
  signpose::OneEuroFilter f(signpose::FilterParams{});
  double t = 0.0;
  for (auto _ : state) {
    t += 1.0 / 30.0;
    benchmark::DoNotOptimize(f(std::sin(t), t));
  }
}
BENCHMARK(BM_OneEuroStep);

void BM_FilterSequence(benchmark::State& state) {
  const auto fx = signpose::sinusoid_fixture(static_cast<std::size_t>(state.range(0)));
  signpose::FilterParams p;
  p.coordinate_scale = 512.0;
  for (auto _ : state) benchmark::DoNotOptimize(signpose::filter_sequence(fx.noisy, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FilterSequence)->Arg(30)->Arg(300);

}  // namespace
