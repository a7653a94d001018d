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

#include "clinorm/text.h"

#include <random>

#include <gtest/gtest.h>

#include "clinorm/errors.h"
#include "support/test_data.h"

namespace clinorm {
namespace {

const StopwordList &Stopwords() {
  static const StopwordList list = StopwordList::Load(testing::DataDir() / "stopwords_es.txt");
  return list;
}

const AbbreviationDictionary &Abbreviations() {
  static const AbbreviationDictionary dict =
      AbbreviationDictionary::Load(testing::DataDir() / "abbreviations_es.tsv");
  return dict;
}

std::vector<std::string> Texts(const std::vector<Span> &spans) {
  std::vector<std::string> out;
  for (const auto &s : spans) out.push_back(s.text);
  return out;
}

bool Has(const std::vector<Span> &spans, const std::string &text) {
  auto t = Texts(spans);
  return std::find(t.begin(), t.end(), text) != t.end();
}

TEST(Tokenize, OffsetsKindsAndSentences) {
  std::string text = "¿Tos? Fiebre de 38.5 grados.";
  auto toks = Tokenize(text, Stopwords());
  std::vector<std::string> surfaces;
  for (const auto &t : toks) surfaces.push_back(t.surface);
  EXPECT_EQ(surfaces, (std::vector<std::string>{"¿", "Tos", "?", "Fiebre", "de", "38.5",
                                                "grados", "."}));
  for (const auto &t : toks) EXPECT_EQ(text.substr(t.begin, t.end - t.begin), t.surface);
  EXPECT_EQ(toks[1].norm, "tos");
  EXPECT_EQ(toks[0].kind, TokenKind::kPunct);
  EXPECT_EQ(toks[4].kind, TokenKind::kFunction);
  EXPECT_EQ(toks[5].kind, TokenKind::kNumber);
  EXPECT_EQ(toks[1].sentence, 0u);
  EXPECT_EQ(toks[3].sentence, 1u);
}

TEST(Tokenize, NewlineEndsSentence) {
  auto toks = Tokenize("tos\ndisnea", Stopwords());
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_NE(toks[0].sentence, toks[1].sentence);
}

TEST(Abbreviations, ExpandKeepsOriginalOffsets) {
  std::string text = "acude por lesión grave en rodilla dcha";
  auto expanded = ExpandAbbreviations(text, Tokenize(text, Stopwords()), Abbreviations(),
                                      Stopwords());
  EXPECT_EQ(expanded.text, "acude por lesión grave en rodilla derecha");
  EXPECT_EQ(expanded.expansions, 1u);
  const Token &last = expanded.tokens.back();
  EXPECT_EQ(last.surface, "derecha");
  EXPECT_TRUE(last.expanded);
  EXPECT_EQ(text.substr(last.begin, last.end - last.begin), "dcha");
}

TEST(Abbreviations, AbsorbsTrailingPeriodAndMultiWordExpansions) {
  std::string text = "Pac. con HTA";
  auto expanded = ExpandAbbreviations(text, Tokenize(text, Stopwords()), Abbreviations(),
                                      Stopwords());
  EXPECT_EQ(expanded.text, "paciente con hipertensión arterial");
  const Token &hta = expanded.tokens.back();
  EXPECT_EQ(text.substr(hta.begin, hta.end - hta.begin), "HTA");
  EXPECT_EQ(expanded.tokens.front().sentence, expanded.tokens.back().sentence);
}

TEST(Abbreviations, EmptyDictionaryIsIdentity) {
  std::string text = "rodilla dcha";
  auto toks = Tokenize(text, Stopwords());
  auto expanded = ExpandAbbreviations(text, toks, AbbreviationDictionary{}, Stopwords());
  EXPECT_EQ(expanded.text, text);
  EXPECT_EQ(expanded.tokens.size(), toks.size());
}

TEST(Abbreviations, RejectsEmptyEntries) {
  AbbreviationDictionary d;
  EXPECT_THROW(d.Add("", "x"), Error);
  EXPECT_THROW(d.Add("x", ""), Error);
}

TEST(NgramSpans, SkipsFunctionAndPunctuationEdges) {
  auto toks = Tokenize("¿Debemos descartar una asplenia congénita?", Stopwords());
  auto spans = NgramSpans(toks, 1, 5);
  EXPECT_TRUE(Has(spans, "descartar"));
  EXPECT_TRUE(Has(spans, "asplenia congénita"));
  EXPECT_TRUE(Has(spans, "descartar una asplenia"));
  EXPECT_FALSE(Has(spans, "una asplenia"));
  EXPECT_FALSE(Has(spans, "congénita ?"));
}

TEST(NgramSpans, BadRangeThrows) {
  auto toks = Tokenize("tos", Stopwords());
  EXPECT_THROW(NgramSpans(toks, 0, 2), Error);
  EXPECT_THROW(NgramSpans(toks, 3, 2), Error);
}

// For a sentence of c content tokens the number of windows is
// sum_{n=min}^{min(max,c)} (c - n + 1).
TEST(NgramSpans, CountMatchesClosedForm) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    size_t c = rng() % 12 + 1;
    size_t lo = rng() % 5 + 1;
    size_t hi = lo + rng() % 5;
    std::string text;
    for (size_t i = 0; i < c; ++i) text += "palabra" + std::to_string(i) + " ";
    auto spans = NgramSpans(Tokenize(text, Stopwords()), lo, hi);
    size_t expected = 0;
    for (size_t n = lo; n <= std::min(hi, c); ++n) expected += c - n + 1;
    EXPECT_EQ(spans.size(), expected) << "c=" << c << " lo=" << lo << " hi=" << hi;
  }
}

TEST(NgramSpans, MixedTokensMatchBruteForce) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> vocab = {"tos", "de", "la", ",", "fiebre", "dolor", "y", "."};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    size_t len = rng() % 14 + 1;
    for (size_t i = 0; i < len; ++i) text += vocab[rng() % vocab.size()] + " ";
    auto toks = Tokenize(text, Stopwords());
    auto spans = NgramSpans(toks, 1, 4);
    size_t expected = 0;
    for (size_t i = 0; i < toks.size(); ++i) {
      for (size_t j = i; j < toks.size() && j - i < 4; ++j) {
        bool same = true, content = false;
        for (size_t k = i; k <= j; ++k) {
          same = same && toks[k].sentence == toks[i].sentence;
          content = content || toks[k].kind == TokenKind::kContent;
        }
        auto edge = [](const Token &t) {
          return t.kind == TokenKind::kPunct || t.kind == TokenKind::kFunction;
        };
        if (same && content && !edge(toks[i]) && !edge(toks[j])) ++expected;
      }
    }
    EXPECT_EQ(spans.size(), expected) << text;
  }
}

TEST(PhraseSpans, JoinsAcrossOneFunctionWord) {
  auto toks = Tokenize("dolor de cabeza intenso", Stopwords());
  auto spans = PhraseSpans(toks);
  EXPECT_TRUE(Has(spans, "dolor de cabeza intenso"));
  EXPECT_TRUE(Has(spans, "cabeza intenso"));
  EXPECT_TRUE(Has(spans, "dolor"));
  EXPECT_FALSE(Has(spans, "de cabeza"));
}

TEST(PhraseSpans, CoordinationDistributesHead) {
  auto toks = Tokenize("rodilla derecha e izquierda", Stopwords());
  auto spans = PhraseSpans(toks);
  bool found = false;
  for (const auto &s : spans) {
    if (s.text == "rodilla izquierda") {
      found = true;
      EXPECT_FALSE(s.Contiguous());
    }
  }
  EXPECT_TRUE(found);
}

TEST(PhraseSpans, NoSpansWithoutContent) {
  EXPECT_TRUE(PhraseSpans(Tokenize("de la , y", Stopwords())).empty());
}

TEST(Forest, ParentIsSmallestSuperset) {
  auto toks = Tokenize("a b c d", StopwordList{});
  SpanForest f = BuildSubsumptionForest(NgramSpans(toks, 1, 4));
  ASSERT_EQ(f.nodes.size(), 10u);
  ASSERT_EQ(f.roots.size(), 1u);
  EXPECT_EQ(f.nodes[f.roots[0]].text, "a b c d");
  for (uint32_t i = 0; i < f.nodes.size(); ++i) {
    if (f.parent[i] < 0) continue;
    const auto &child = f.nodes[i].tokens;
    const auto &parent = f.nodes[f.parent[i]].tokens;
    EXPECT_TRUE(StrictSubset(child, parent));
    for (const auto &other : f.nodes) {
      bool between = StrictSubset(child, other.tokens) && StrictSubset(other.tokens, parent);
      EXPECT_FALSE(between);
    }
  }
}

TEST(Forest, DisjointSpansAreSeparateTrees) {
  auto toks = Tokenize("tos . fiebre", Stopwords());
  SpanForest f = BuildSubsumptionForest(NgramSpans(toks, 1, 3));
  EXPECT_EQ(f.roots.size(), 2u);
}

TEST(Forest, CollapsesDuplicates) {
  auto toks = Tokenize("tos seca", Stopwords());
  auto spans = NgramSpans(toks, 1, 2);
  auto doubled = spans;
  doubled.insert(doubled.end(), spans.begin(), spans.end());
  EXPECT_EQ(BuildSubsumptionForest(doubled).nodes.size(), spans.size());
}

TEST(Forest, RandomForestsAreCoverRelations) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Span> spans;
    size_t n = rng() % 12 + 1;
    for (size_t i = 0; i < n; ++i) {
      std::vector<uint32_t> pos;
      for (uint32_t p = 0; p < 8; ++p) {
        if (rng() % 3 == 0) pos.push_back(p);
      }
      if (pos.empty()) continue;
      spans.push_back(Span{pos, "", SpanSource::kPhrase});
    }
    SpanForest f = BuildSubsumptionForest(spans);
    size_t children = 0;
    for (const auto &c : f.children) children += c.size();
    EXPECT_EQ(children + f.roots.size(), f.nodes.size());
    for (uint32_t i = 0; i < f.nodes.size(); ++i) {
      bool has_super = false;
      for (const auto &o : f.nodes) has_super = has_super || StrictSubset(f.nodes[i].tokens, o.tokens);
      EXPECT_EQ(f.parent[i] >= 0, has_super);
      if (f.parent[i] >= 0) {
        size_t psize = f.nodes[f.parent[i]].tokens.size();
        for (const auto &o : f.nodes) {
          if (StrictSubset(f.nodes[i].tokens, o.tokens)) EXPECT_GE(o.tokens.size(), psize);
        }
      }
    }
  }
}

}  // namespace
}  // namespace clinorm
