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

#ifndef CLINORM_UTF8_H_
#define CLINORM_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 support for Spanish clinical text. Case mapping and accent
// folding cover ASCII, Latin-1 Supplement and Latin Extended-A; everything
// else passes through unchanged.
namespace clinorm::utf8 {

// Decodes the code point starting at byte offset `pos` and advances `pos`.
// Invalid sequences decode as U+FFFD and consume one byte.
char32_t Next(std::string_view text, size_t &pos);

void Append(std::string &out, char32_t cp);

bool IsSpace(char32_t cp);
bool IsDigit(char32_t cp);
// Letters and digits. Everything that is neither space nor word character is
// treated as punctuation.
bool IsWordChar(char32_t cp);
inline bool IsPunct(char32_t cp) { return !IsSpace(cp) && !IsWordChar(cp); }

char32_t ToLower(char32_t cp);
std::string ToLower(std::string_view text);

// Lowercases and strips diacritics: "Congénita" -> "congenita".
std::string FoldAccents(std::string_view text);

size_t Length(std::string_view text);

// Entry i is the number of code points before byte i; size() + 1 entries.
std::vector<size_t> CodePointIndex(std::string_view text);

// Code points [begin, end) of `text`.
std::string_view Slice(std::string_view text, size_t begin, size_t end);
std::u32string Decode(std::string_view text);

// Levenshtein distance over code points.
size_t EditDistance(std::string_view a, std::string_view b);

}  // namespace clinorm::utf8

#endif  // CLINORM_UTF8_H_
