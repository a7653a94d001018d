// Copyright 2026 The clinorm Authors.
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

#include <random>

#include <benchmark/benchmark.h>

#include "bench_common.h"
#include "clinorm/wsd.h"

namespace clinorm {
namespace {

void BM_PprRandomGraph(benchmark::State &state) {
  const size_t n = state.range(0);
  std::mt19937_64 rng(3);
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) names.push_back("C" + std::to_string(i));
  std::vector<std::tuple<uint32_t, uint32_t, std::string>> edges;
  for (size_t i = 0; i < 4 * n; ++i) {
    edges.emplace_back(rng() % n, rng() % n, "RO");
  }
  ConceptGraph graph(names, edges);
  std::vector<double> seeds(n, 0.0);
  for (int i = 0; i < 10; ++i) seeds[rng() % n] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(PersonalizedPageRank(graph, seeds));
}
BENCHMARK(BM_PprRandomGraph)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_PprSample(benchmark::State &state) {
  const auto &graph = *bench::SampleEngine()->graph();
  std::vector<double> seeds(graph.vertex_count(), 0.0);
  seeds[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(PersonalizedPageRank(graph, seeds));
}
BENCHMARK(BM_PprSample);

}  // namespace
}  // namespace clinorm
