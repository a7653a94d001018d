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

#include "clinorm/snapshot.h"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "clinorm/errors.h"
#include "clinorm/json_io.h"
#include "support/test_data.h"

namespace clinorm {
namespace {

namespace fs = std::filesystem;

fs::path Temp(const std::string &name) { return fs::temp_directory_path() / name; }

TEST(Snapshot, RoundTripPreservesAnnotations) {
  const Snapshot &s = testing::SampleSnapshot();
  fs::path p = Temp("clinorm_snapshot_roundtrip.json");
  SaveSnapshot(p, s.kb, s.index, s.abbreviations);
  Snapshot loaded = LoadSnapshot(p);
  EXPECT_EQ(loaded.kb.concepts.size(), s.kb.concepts.size());
  EXPECT_EQ(loaded.kb.relations.size(), s.kb.relations.size());
  EXPECT_EQ(loaded.kb.dictionary, s.kb.dictionary);
  EXPECT_EQ(loaded.kb.semnet.size(), s.kb.semnet.size());
  EXPECT_EQ(loaded.index.size(), s.index.size());
  EXPECT_EQ(loaded.abbreviations.size(), s.abbreviations.size());
  EXPECT_EQ(ToJson(loaded.kb.report).dump(), ToJson(s.kb.report).dump());

  Engine a(s.kb, s.index, s.abbreviations);
  Engine b(std::move(loaded.kb), std::move(loaded.index), std::move(loaded.abbreviations));
  auto corpus = testing::MakeSyntheticCorpus(20, 3);
  for (const auto &d : corpus.docs) {
    EXPECT_EQ(ToJson(a.Annotate(d.doc_id, d.text, {}), false).dump(),
              ToJson(b.Annotate(d.doc_id, d.text, {}), false).dump());
  }
}

TEST(Snapshot, RejectsForeignFiles) {
  fs::path p = Temp("clinorm_snapshot_bad.json");
  std::ofstream(p) << R"({"format":"other","version":1})";
  try {
    LoadSnapshot(p);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
  }
  std::ofstream(p) << R"({"format":"clinorm-kb","version":99})";
  EXPECT_THROW(LoadSnapshot(p), Error);
  std::ofstream(p) << "not json";
  EXPECT_THROW(LoadSnapshot(p), Error);
  std::ofstream(p) << R"({"format":"clinorm-kb","version":1})";
  EXPECT_THROW(LoadSnapshot(p), Error);
  try {
    LoadSnapshot(Temp("clinorm_no_such_snapshot.json"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace clinorm
