// Copyright 2026 The qentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qentropy/additivity.hpp"
#include "qentropy/classify.hpp"
#include "qentropy/entropies.hpp"
#include "qentropy/limits.hpp"
#include "qentropy/probsys.hpp"

namespace {

using namespace qentropy;

ProbVec sample_of(std::int64_t n) {
  SimplexSampler s(17);
  return s.sample(static_cast<std::size_t>(n));
}

void BM_Tsallis(benchmark::State& state) {
  const auto p = sample_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tsallis(QParam(2.0), p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Tsallis)->RangeMultiplier(8)->Range(8, 1 << 15)->Complexity();

void BM_TsallisNearOne(benchmark::State& state) {
  const auto p = sample_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tsallis(QParam(1.0 + 5e-7), p));
}
BENCHMARK(BM_TsallisNearOne)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_Class3(benchmark::State& state) {
  const auto p = sample_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(class3(QParam(2.0), p));
}
BENCHMARK(BM_Class3)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_Shannon(benchmark::State& state) {
  const auto p = sample_of(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shannon(p));
}
BENCHMARK(BM_Shannon)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_PseudoResidual(benchmark::State& state) {
  const auto s = product(sample_of(state.range(0)), sample_of(state.range(0) + 1));
  const auto f = EntropyFunctional::tsallis(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(pseudo_residual(f, s, Form::original));
}
BENCHMARK(BM_PseudoResidual)->RangeMultiplier(4)->Range(4, 256);

void BM_LimitCheck(benchmark::State& state) {
  const auto p = sample_of(state.range(0));
  const auto f = EntropyFunctional::class3(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(limit_check(f, p));
}
BENCHMARK(BM_LimitCheck)->Arg(4)->Arg(64);

void BM_Classify(benchmark::State& state) {
  const auto f = EntropyFunctional::tsallis(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(f, Form::original, static_cast<std::size_t>(state.range(0)), 42));
  }
}
BENCHMARK(BM_Classify)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
