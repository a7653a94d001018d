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

#ifndef CLINORM_BENCHMARKS_BENCH_COMMON_H_
#define CLINORM_BENCHMARKS_BENCH_COMMON_H_

#include <memory>

#include "clinorm/pipeline.h"
#include "clinorm/snapshot.h"

namespace clinorm::bench {

const Snapshot &Sample();
std::shared_ptr<const Engine> SampleEngine();

}  // namespace clinorm::bench

#endif  // CLINORM_BENCHMARKS_BENCH_COMMON_H_
