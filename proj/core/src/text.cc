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

#include <algorithm>
#include <fstream>
#include <set>

#include "clinorm/errors.h"
#include "clinorm/utf8.h"

namespace clinorm {

const char *TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kContent: return "content";
    case TokenKind::kFunction: return "function";
    case TokenKind::kPunct: return "punct";
    case TokenKind::kNumber: return "number";
  }
  return "unknown";
}

namespace {

bool EndsSentence(char32_t cp) { return cp == '.' || cp == '?' || cp == '!'; }

bool AllDigits(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit;
}

bool Boundary(const Token &t) {
  return t.kind == TokenKind::kPunct || t.kind == TokenKind::kFunction;
}

bool IsCoordinator(const Token &t) {
  if (t.kind == TokenKind::kPunct) return t.surface == ",";
  return t.norm == "y" || t.norm == "o" || t.norm == "e" || t.norm == "u";
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text, const StopwordList &function_words) {
  std::vector<Token> tokens;
  uint32_t sentence = 0;
  bool sentence_open = false;
  auto close_sentence = [&] {
    if (sentence_open) {
      ++sentence;
      sentence_open = false;
    }
  };
  auto emit = [&](size_t begin, size_t end, TokenKind kind) {
    Token t;
    t.surface = std::string(text.substr(begin, end - begin));
    t.norm = utf8::ToLower(t.surface);
    t.begin = begin;
    t.end = end;
    t.sentence = sentence;
    if (kind != TokenKind::kPunct) {
      if (AllDigits(t.norm)) {
        kind = TokenKind::kNumber;
      } else if (function_words.Contains(t.norm)) {
        kind = TokenKind::kFunction;
      }
    }
    t.kind = kind;
    tokens.push_back(std::move(t));
    sentence_open = true;
  };

  size_t pos = 0;
  while (pos < text.size()) {
    size_t start = pos;
    char32_t cp = utf8::Next(text, pos);
    if (utf8::IsSpace(cp)) {
      if (cp == '\n') close_sentence();
      continue;
    }
    if (utf8::IsPunct(cp)) {
      emit(start, pos, TokenKind::kPunct);
      if (EndsSentence(cp)) close_sentence();
      continue;
    }
    char32_t prev = cp;
    size_t end = pos;
    while (end < text.size()) {
      size_t look = end;
      char32_t next = utf8::Next(text, look);
      if (utf8::IsWordChar(next)) {
        prev = next;
        end = look;
        continue;
      }
      // Keep decimal separators inside numbers: "37,5", "1.200".
      if ((next == '.' || next == ',') && utf8::IsDigit(prev) && look < text.size()) {
        size_t after = look;
        if (utf8::IsDigit(utf8::Next(text, after))) {
          prev = next;
          end = look;
          continue;
        }
      }
      break;
    }
    emit(start, end, TokenKind::kContent);
    pos = end;
  }
  return tokens;
}

AbbreviationDictionary AbbreviationDictionary::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  AbbreviationDictionary dict;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) +
                                         ": expected abbreviation<TAB>expansion");
    }
    dict.Add(line.substr(0, tab), line.substr(tab + 1));
  }
  return dict;
}

void AbbreviationDictionary::Add(std::string abbreviation, std::string expansion) {
  while (!abbreviation.empty() && abbreviation.back() == '.') abbreviation.pop_back();
  if (abbreviation.empty() || expansion.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty abbreviation entry");
  }
  folded_.emplace(utf8::ToLower(abbreviation), expansion);
  exact_.insert_or_assign(std::move(abbreviation), std::move(expansion));
}

const std::string *AbbreviationDictionary::Find(std::string_view token) const {
  if (auto it = exact_.find(token); it != exact_.end()) return &it->second;
  if (auto it = folded_.find(utf8::ToLower(token)); it != folded_.end()) return &it->second;
  return nullptr;
}

ExpandedText ExpandAbbreviations(std::string_view original, const std::vector<Token> &tokens,
                                 const AbbreviationDictionary &dictionary,
                                 const StopwordList &function_words) {
  ExpandedText out;
  size_t cursor = 0;
  // Sentence breaks swallowed by an abbreviation's period.
  uint32_t merged = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token &t = tokens[i];
    const uint32_t sentence = t.sentence - merged;
    const std::string *expansion = nullptr;
    if (t.kind != TokenKind::kPunct && t.kind != TokenKind::kNumber && !dictionary.empty()) {
      expansion = dictionary.Find(t.surface);
    }
    if (expansion == nullptr) {
      out.tokens.push_back(t);
      out.tokens.back().sentence = sentence;
      continue;
    }
    size_t end = t.end;
    if (i + 1 < tokens.size() && tokens[i + 1].surface == "." && tokens[i + 1].begin == t.end) {
      end = tokens[i + 1].end;
      ++i;
      if (i + 1 < tokens.size() && tokens[i + 1].sentence > tokens[i].sentence) ++merged;
    }
    out.text.append(original.substr(cursor, t.begin - cursor));
    out.text.append(*expansion);
    cursor = end;
    for (Token e : Tokenize(*expansion, function_words)) {
      e.begin = t.begin;
      e.end = end;
      e.sentence = sentence;
      e.expanded = true;
      out.tokens.push_back(std::move(e));
    }
    ++out.expansions;
  }
  out.text.append(original.substr(cursor));
  return out;
}

Span MakeSpan(const std::vector<Token> &tokens, std::vector<uint32_t> positions,
              SpanSource source) {
  Span span;
  span.source = source;
  for (uint32_t p : positions) {
    if (!span.text.empty()) span.text.push_back(' ');
    span.text += tokens[p].surface;
  }
  span.tokens = std::move(positions);
  return span;
}

std::vector<Span> NgramSpans(const std::vector<Token> &tokens, size_t n_min, size_t n_max) {
  if (n_min < 1 || n_min > n_max) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram range must satisfy 1 <= min <= max");
  }
  std::vector<Span> spans;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (Boundary(tokens[i])) continue;
    bool has_content = false;
    for (size_t j = i; j < tokens.size() && j - i + 1 <= n_max; ++j) {
      if (tokens[j].sentence != tokens[i].sentence) break;
      has_content = has_content || tokens[j].kind == TokenKind::kContent;
      size_t n = j - i + 1;
      if (n < n_min || Boundary(tokens[j]) || !has_content) continue;
      std::vector<uint32_t> positions;
      for (size_t k = i; k <= j; ++k) positions.push_back(static_cast<uint32_t>(k));
      spans.push_back(MakeSpan(tokens, std::move(positions), SpanSource::kNgram));
    }
  }
  return spans;
}

std::vector<Span> PhraseSpans(const std::vector<Token> &tokens) {
  using Run = std::pair<uint32_t, uint32_t>;  // [first, last]
  std::vector<Run> runs;
  for (uint32_t i = 0; i < tokens.size();) {
    if (tokens[i].kind != TokenKind::kContent) {
      ++i;
      continue;
    }
    uint32_t j = i;
    while (j + 1 < tokens.size() && tokens[j + 1].kind == TokenKind::kContent &&
           tokens[j + 1].sentence == tokens[i].sentence) {
      ++j;
    }
    runs.emplace_back(i, j);
    i = j + 1;
  }

  std::set<std::vector<uint32_t>> emitted;
  std::vector<Span> spans;
  auto add = [&](std::vector<uint32_t> positions) {
    if (emitted.insert(positions).second) {
      spans.push_back(MakeSpan(tokens, std::move(positions), SpanSource::kPhrase));
    }
  };
  auto range = [](uint32_t a, uint32_t b) {
    std::vector<uint32_t> v;
    for (uint32_t k = a; k <= b; ++k) v.push_back(k);
    return v;
  };
  auto gap_is = [&](const Run &a, const Run &b, auto pred) {
    return b.first == a.second + 2 && tokens[a.second].sentence == tokens[b.first].sentence &&
           pred(tokens[a.second + 1]);
  };

  // Base phrases: runs joined across one function word.
  for (size_t r = 0; r < runs.size();) {
    size_t s = r;
    while (s + 1 < runs.size() &&
           gap_is(runs[s], runs[s + 1],
                  [](const Token &t) { return t.kind == TokenKind::kFunction; })) {
      ++s;
    }
    add(range(runs[r].first, runs[s].second));
    r = s + 1;
  }

  // Contiguous sub-runs of each content run.
  for (const Run &run : runs) {
    for (uint32_t a = run.first; a <= run.second; ++a) {
      for (uint32_t b = a; b <= run.second; ++b) add(range(a, b));
    }
  }

  // Coordination chains distribute a shared leading or trailing head.
  for (size_t r = 0; r < runs.size();) {
    size_t s = r;
    while (s + 1 < runs.size() && gap_is(runs[s], runs[s + 1], IsCoordinator)) ++s;
    const Run &first = runs[r];
    const Run &last = runs[s];
    auto len = [](const Run &x) { return x.second - x.first + 1; };
    for (size_t k = r + 1; k <= s; ++k) {
      if (len(runs[k]) >= len(first)) continue;
      std::vector<uint32_t> v = range(first.first, first.second - len(runs[k]));
      for (uint32_t p : range(runs[k].first, runs[k].second)) v.push_back(p);
      add(std::move(v));
    }
    for (size_t k = r; k < s; ++k) {
      if (len(runs[k]) >= len(last)) continue;
      std::vector<uint32_t> v = range(runs[k].first, runs[k].second);
      for (uint32_t p : range(last.first + len(runs[k]), last.second)) v.push_back(p);
      add(std::move(v));
    }
    r = s + 1;
  }

  std::sort(spans.begin(), spans.end(),
            [](const Span &a, const Span &b) { return a.tokens < b.tokens; });
  return spans;
}

bool StrictSubset(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

SpanForest BuildSubsumptionForest(std::vector<Span> spans) {
  SpanForest forest;
  std::set<std::vector<uint32_t>> seen;
  for (auto &s : spans) {
    if (s.tokens.empty()) continue;
    if (seen.insert(s.tokens).second) forest.nodes.push_back(std::move(s));
  }
  const size_t n = forest.nodes.size();
  forest.parent.assign(n, -1);
  forest.children.assign(n, {});
  if (n == 0) return forest;

  uint32_t max_token = 0;
  uint32_t max_width = 0;
  for (const auto &s : forest.nodes) {
    max_token = std::max(max_token, s.tokens.back());
    max_width = std::max(max_width, s.tokens.back() - s.tokens.front() + 1);
  }
  std::vector<std::vector<uint32_t>> by_front(max_token + 1);
  for (uint32_t i = 0; i < n; ++i) by_front[forest.nodes[i].tokens.front()].push_back(i);

  for (uint32_t i = 0; i < n; ++i) {
    const auto &s = forest.nodes[i].tokens;
    uint32_t lo = s.back() + 1 >= max_width ? s.back() + 1 - max_width : 0;
    int32_t best = -1;
    for (uint32_t f = lo; f <= s.front(); ++f) {
      for (uint32_t j : by_front[f]) {
        const auto &p = forest.nodes[j].tokens;
        if (p.back() < s.back() || !StrictSubset(s, p)) continue;
        if (best < 0) {
          best = static_cast<int32_t>(j);
          continue;
        }
        const auto &q = forest.nodes[best].tokens;
        if (p.size() < q.size() || (p.size() == q.size() && p < q)) {
          best = static_cast<int32_t>(j);
        }
      }
    }
    forest.parent[i] = best;
  }
  for (uint32_t i = 0; i < n; ++i) {
    if (forest.parent[i] < 0) {
      forest.roots.push_back(i);
    } else {
      forest.children[forest.parent[i]].push_back(i);
    }
  }
  return forest;
}

}  // namespace clinorm
