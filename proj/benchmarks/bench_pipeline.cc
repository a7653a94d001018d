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

#include <benchmark/benchmark.h>

#include "bench_common.h"
#include "clinorm/pipeline.h"

namespace clinorm {
namespace {

const char *kNote =
    "Varón de 67 años con HTA y DM tipo 2. Acude por dolor torácico y disnea de esfuerzo. "
    "Presenta un clavo en el pie. Lesión grave en rodilla dcha. "
    "¿Debemos descartar una asplenia congénita? Se solicita Rx de tórax.";

void BM_Annotate(benchmark::State &state) {
  auto engine = bench::SampleEngine();
  PipelineConfig cfg;
  cfg.boundary = static_cast<Boundary>(state.range(0));
  cfg.reranker = static_cast<Reranker>(state.range(1));
  cfg.wsd = static_cast<WsdMode>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(engine->Annotate("d", kNote, cfg));
  state.SetLabel(std::string(BoundaryName(cfg.boundary)) + "/" + RerankerName(cfg.reranker) + "/" +
                 WsdModeName(cfg.wsd));
}
BENCHMARK(BM_Annotate)->ArgsProduct({{0, 1}, {0, 1, 2}, {0, 1}});

}  // namespace
}  // namespace clinorm
