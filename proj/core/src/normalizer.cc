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

#include "clinorm/normalizer.h"

#include <fstream>

#include "clinorm/errors.h"
#include "clinorm/utf8.h"

namespace clinorm {

namespace {

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

// Removes "(...)" groups without nested parentheses whose trimmed,
// lowercased content is listed.
std::string StripParentheticals(std::string_view text,
                                const std::set<std::string> &listed) {
  if (listed.empty()) return std::string(text);
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '(') {
      size_t close = text.find_first_of("()", i + 1);
      if (close != std::string_view::npos && text[close] == ')') {
        std::string content = Trim(text.substr(i + 1, close - i - 1));
        if (listed.count(content) > 0) {
          out.push_back(' ');
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

}  // namespace

StopwordList::StopwordList(std::set<std::string> words) {
  for (const char *polar : {"no", "sin", "con"}) {
    if (words.count(polar) > 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("stopword list must not contain polarity word \"") +
                      polar + "\"");
    }
  }
  words_.insert(words.begin(), words.end());
}

StopwordList StopwordList::Load(const std::filesystem::path &path) {
  return StopwordList(LoadWordList(path));
}

bool StopwordList::Contains(std::string_view word) const {
  return words_.find(word) != words_.end();
}

std::set<std::string> LoadWordList(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = Trim(line);
    if (word.empty() || word[0] == '#') continue;
    words.insert(utf8::ToLower(word));
  }
  return words;
}

std::vector<std::string> WordTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::Next(text, pos);
    if (utf8::IsWordChar(cp)) {
      utf8::Append(current, utf8::ToLower(cp));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TermNormalizer::TermNormalizer(StopwordList stopwords,
                               std::set<std::string> parentheticals)
    : stopwords_(std::move(stopwords)) {
  for (const auto &p : parentheticals) parentheticals_.insert(utf8::ToLower(Trim(p)));
}

std::vector<std::string> TermNormalizer::NormalizedTokens(std::string_view term) const {
  std::string lowered = utf8::ToLower(term);
  std::string stripped = StripParentheticals(lowered, parentheticals_);
  std::vector<std::string> tokens;
  for (auto &word : WordTokens(stripped)) {
    if (!stopwords_.Contains(word)) tokens.push_back(std::move(word));
  }
  return tokens;
}

std::string TermNormalizer::Normalize(std::string_view term) const {
  std::string out;
  for (const auto &token : NormalizedTokens(term)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

std::string NormalizeString(std::string_view term, const StopwordList &stopwords,
                            const std::set<std::string> &parentheticals) {
  return TermNormalizer(stopwords, parentheticals).Normalize(term);
}

}  // namespace clinorm
