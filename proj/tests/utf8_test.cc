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

#include "clinorm/utf8.h"

#include <gtest/gtest.h>

namespace clinorm::utf8 {
namespace {

TEST(Utf8, DecodeAndLength) {
  EXPECT_EQ(Length("congénita"), 9u);
  EXPECT_EQ(Decode("ñá"), std::u32string({U'ñ', U'á'}));
}

TEST(Utf8, TruncatedSequenceDoesNotOverrun) {
  std::string bad = "a\xC3";
  size_t pos = 1;
  Next(bad, pos);
  EXPECT_EQ(pos, bad.size());
}

TEST(Utf8, LowerAndFold) {
  EXPECT_EQ(ToLower("ÁRBOL Ñandú"), "árbol ñandú");
  EXPECT_EQ(FoldAccents("congénita acción pingüino"), "congenita accion pinguino");
  EXPECT_EQ(FoldAccents("año"), "año");
}

TEST(Utf8, CodePointIndexAndSlice) {
  std::string s = "año x";
  auto idx = CodePointIndex(s);
  ASSERT_EQ(idx.size(), s.size() + 1);
  EXPECT_EQ(idx[3], 2u);
  EXPECT_EQ(idx.back(), 5u);
  EXPECT_EQ(Slice(s, 1, 3), "ño");
  EXPECT_EQ(Slice(s, 4, 9), "x");
  EXPECT_EQ(Slice(s, 7, 9), "");
}

TEST(Utf8, Classes) {
  EXPECT_TRUE(IsWordChar(U'é'));
  EXPECT_TRUE(IsPunct(U'¿'));
  EXPECT_TRUE(IsPunct(U','));
  EXPECT_TRUE(IsSpace(U'\t'));
  EXPECT_TRUE(IsDigit(U'7'));
}

TEST(Utf8, EditDistanceCountsCodePoints) {
  EXPECT_EQ(EditDistance("congénita", "congénito"), 1u);
  EXPECT_EQ(EditDistance("", "abc"), 3u);
  EXPECT_EQ(EditDistance("kitten", "sitting"), 3u);
  EXPECT_EQ(EditDistance("á", "a"), 1u);
}

}  // namespace
}  // namespace clinorm::utf8
