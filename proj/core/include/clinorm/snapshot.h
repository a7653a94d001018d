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

#ifndef CLINORM_SNAPSHOT_H_
#define CLINORM_SNAPSHOT_H_

#include <filesystem>

#include "clinorm/index.h"
#include "clinorm/kb.h"
#include "clinorm/text.h"

namespace clinorm {

inline constexpr int kSnapshotVersion = 1;

// Everything the annotation engine needs, persisted as one JSON file.
struct Snapshot {
  KnowledgeBase kb;
  Index index;
  AbbreviationDictionary abbreviations;
};

struct ResourcePaths {
  std::filesystem::path stopwords;
  std::filesystem::path parentheticals;
  std::filesystem::path abbreviations;  // optional
};

// Bundled resources under `data_dir`.
ResourcePaths DefaultResources(const std::filesystem::path &data_dir);

// Reads a release directory and builds the KB, its index and the
// abbreviation dictionary.
Snapshot BuildSnapshot(const std::filesystem::path &release_dir, const ResourcePaths &resources,
                       const BuildConfig &config = {});

void SaveSnapshot(const std::filesystem::path &path, const KnowledgeBase &kb,
                  const Index &index, const AbbreviationDictionary &abbreviations);

// Throws Error(kIo) when unreadable and Error(kFormat) on a wrong format
// tag, version or structure.
Snapshot LoadSnapshot(const std::filesystem::path &path);

}  // namespace clinorm

#endif  // CLINORM_SNAPSHOT_H_
