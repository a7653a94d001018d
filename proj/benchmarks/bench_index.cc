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
#include <set>

#include <benchmark/benchmark.h>

#include "bench_common.h"
#include "clinorm/index.h"

namespace clinorm {
namespace {

Index RandomIndex(size_t n, std::vector<std::vector<std::string>> *queries) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> word(0, 4999), len(1, 6);
  std::vector<IndexEntry> entries;
  std::set<std::string> seen;
  while (entries.size() < n) {
    std::string norm;
    for (int i = len(rng); i > 0; --i) norm += (norm.empty() ? "w" : " w") + std::to_string(word(rng));
    if (!seen.insert(norm).second) continue;
    entries.push_back(IndexEntry{norm, norm, {"C" + std::to_string(entries.size())}, {"SCTSPA"}});
  }
  for (int q = 0; q < 256; ++q) {
    std::vector<std::string> toks;
    for (int i = len(rng) % 4 + 1; i > 0; --i) toks.push_back("w" + std::to_string(word(rng)));
    queries->push_back(std::move(toks));
  }
  return Index::Build(entries);
}

void BM_IndexBuild(benchmark::State &state) {
  for (auto _ : state) {
    std::vector<std::vector<std::string>> queries;
    benchmark::DoNotOptimize(RandomIndex(state.range(0), &queries));
  }
}
BENCHMARK(BM_IndexBuild)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_IndexQuery(benchmark::State &state) {
  std::vector<std::vector<std::string>> queries;
  Index index = RandomIndex(state.range(0), &queries);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.QueryTokens(queries[i++ % queries.size()], kDefaultTopK));
  }
}
BENCHMARK(BM_IndexQuery)->Arg(1000)->Arg(100000);

void BM_SampleQuery(benchmark::State &state) {
  const Index &index = bench::Sample().index;
  for (auto _ : state) benchmark::DoNotOptimize(index.Query("asplenia congénita"));
}
BENCHMARK(BM_SampleQuery);

}  // namespace
}  // namespace clinorm
