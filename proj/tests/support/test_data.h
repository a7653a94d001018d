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

#ifndef CLINORM_TESTS_SUPPORT_TEST_DATA_H_
#define CLINORM_TESTS_SUPPORT_TEST_DATA_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "clinorm/eval.h"
#include "clinorm/pipeline.h"
#include "clinorm/snapshot.h"

namespace clinorm::testing {

std::filesystem::path DataDir();
std::filesystem::path SampleDir();

// Built once per process from the bundled sample release.
const Snapshot &SampleSnapshot();
std::shared_ptr<const Engine> SampleEngine();

struct SyntheticCorpus {
  std::vector<InputDocument> docs;
  // Concepts planted in each document, standing in for a second annotator.
  AnnotationSets reference;
};

// Clinical-note-like documents assembled from sample KB terms.
SyntheticCorpus MakeSyntheticCorpus(size_t docs, uint64_t seed);

}  // namespace clinorm::testing

#endif  // CLINORM_TESTS_SUPPORT_TEST_DATA_H_
