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

#include "bench_common.h"

namespace clinorm::bench {

const Snapshot &Sample() {
  static const Snapshot snapshot = BuildSnapshot(
      std::filesystem::path(CLINORM_BENCH_DATA_DIR) / "sample",
      DefaultResources(CLINORM_BENCH_DATA_DIR));
  return snapshot;
}

std::shared_ptr<const Engine> SampleEngine() {
  static const auto engine = std::make_shared<const Engine>(
      Sample().kb, Sample().index, Sample().abbreviations);
  return engine;
}

}  // namespace clinorm::bench
