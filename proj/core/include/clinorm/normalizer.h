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

#ifndef CLINORM_NORMALIZER_H_
#define CLINORM_NORMALIZER_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace clinorm {

// Lowercase closed-class words. Never contains the polarity words "no",
// "sin" and "con".
class StopwordList {
 public:
  StopwordList() = default;
  // Throws Error(kInvalidArgument) if a polarity word is present.
  explicit StopwordList(std::set<std::string> words);

  // One word per line, '#' starts a comment line.
  static StopwordList Load(const std::filesystem::path &path);

  bool Contains(std::string_view word) const;
  const std::set<std::string, std::less<>> &words() const { return words_; }
  size_t size() const { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
};

// Reads a one-entry-per-line list with '#' comments, lowercasing entries.
std::set<std::string> LoadWordList(const std::filesystem::path &path);

// Splits on whitespace and punctuation, lowercasing each piece.
std::vector<std::string> WordTokens(std::string_view text);

// Term normalization shared by index construction and query time:
// lowercase, drop listed parenthetical qualifiers, turn punctuation into
// spaces, drop stopwords, collapse whitespace. Accents are kept.
class TermNormalizer {
 public:
  TermNormalizer() = default;
  TermNormalizer(StopwordList stopwords, std::set<std::string> parentheticals);

  std::string Normalize(std::string_view term) const;
  std::vector<std::string> NormalizedTokens(std::string_view term) const;

  const StopwordList &stopwords() const { return stopwords_; }
  const std::set<std::string> &parentheticals() const { return parentheticals_; }

 private:
  StopwordList stopwords_;
  std::set<std::string> parentheticals_;
};

std::string NormalizeString(std::string_view term, const StopwordList &stopwords,
                            const std::set<std::string> &parentheticals);

}  // namespace clinorm

#endif  // CLINORM_NORMALIZER_H_
