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

#ifndef CLINORM_TEXT_H_
#define CLINORM_TEXT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clinorm/normalizer.h"

namespace clinorm {

enum class TokenKind { kContent, kFunction, kPunct, kNumber };

const char *TokenKindName(TokenKind kind);

struct Token {
  std::string surface;
  std::string norm;  // lowercase surface
  // Byte range in the original (pre-expansion) text. For tokens produced by
  // abbreviation expansion this is the range of the abbreviation.
  size_t begin = 0;
  size_t end = 0;
  TokenKind kind = TokenKind::kContent;
  uint32_t sentence = 0;
  bool expanded = false;
};

// Splits on whitespace and punctuation. Punctuation marks become single
// tokens, digit runs (with inner '.' or ',') are numbers, words found in
// `function_words` are function tokens. Sentences end after '.', '?', '!'
// and at newlines.
std::vector<Token> Tokenize(std::string_view text, const StopwordList &function_words);

// Abbreviation -> expansion. Lookup is exact first, then case-insensitive.
class AbbreviationDictionary {
 public:
  AbbreviationDictionary() = default;

  // Two tab-separated columns; '#' starts a comment line.
  static AbbreviationDictionary Load(const std::filesystem::path &path);

  // Throws Error(kInvalidArgument) for an empty key or expansion.
  void Add(std::string abbreviation, std::string expansion);
  const std::string *Find(std::string_view token) const;

  size_t size() const { return exact_.size(); }
  bool empty() const { return exact_.empty(); }
  const std::map<std::string, std::string, std::less<>> &entries() const { return exact_; }

 private:
  std::map<std::string, std::string, std::less<>> exact_;
  std::map<std::string, std::string, std::less<>> folded_;
};

struct ExpandedText {
  std::vector<Token> tokens;
  std::string text;  // original text with abbreviations replaced
  size_t expansions = 0;
};

// Replaces abbreviation tokens (absorbing an immediately following '.') by
// the tokens of their expansion. Output tokens keep original byte ranges.
ExpandedText ExpandAbbreviations(std::string_view original, const std::vector<Token> &tokens,
                                 const AbbreviationDictionary &dictionary,
                                 const StopwordList &function_words);

enum class SpanSource { kNgram, kPhrase };

struct Span {
  std::vector<uint32_t> tokens;  // strictly increasing token positions
  std::string text;              // token surfaces joined by single spaces
  SpanSource source = SpanSource::kNgram;

  bool Contiguous() const { return tokens.back() - tokens.front() + 1 == tokens.size(); }
};

Span MakeSpan(const std::vector<Token> &tokens, std::vector<uint32_t> positions,
              SpanSource source);

// Every contiguous window of n_min..n_max tokens inside one sentence that
// holds a content token and neither starts nor ends on a punctuation or
// function token. Throws Error(kInvalidArgument) unless 1 <= n_min <= n_max.
std::vector<Span> NgramSpans(const std::vector<Token> &tokens, size_t n_min, size_t n_max);

// Rule-based nominal chunks: content runs joined across single function
// words, every contiguous sub-run of a content run, and discontinuous spans
// that distribute a shared head over coordinated runs ("y", "o", "e", "u" or
// a comma).
std::vector<Span> PhraseSpans(const std::vector<Token> &tokens);

// Spans ordered by strict token-set inclusion. Each span hangs under the
// smallest span that strictly contains it (ties: lexicographically smallest
// token list), so every edge is a cover relation and the result is a forest.
struct SpanForest {
  std::vector<Span> nodes;
  std::vector<int32_t> parent;  // -1 for roots
  std::vector<std::vector<uint32_t>> children;
  std::vector<uint32_t> roots;
};

// Duplicate token sets are collapsed (first occurrence wins).
SpanForest BuildSubsumptionForest(std::vector<Span> spans);

bool StrictSubset(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b);

}  // namespace clinorm

#endif  // CLINORM_TEXT_H_
