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

#include <algorithm>
#include <vector>

namespace clinorm::utf8 {

char32_t Next(std::string_view text, size_t &pos) {
  const auto byte = [&](size_t i) { return static_cast<unsigned char>(text[i]); };
  unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    unsigned char c = byte(pos + i);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

void Append(std::string &out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsSpace(char32_t cp) {
  switch (cp) {
    case ' ':
    case '\t':
    case '\n':
    case '\r':
    case '\f':
    case '\v':
    case 0x00A0:
    case 0x2028:
    case 0x2029:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool IsDigit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool IsWordChar(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
           (cp >= 'A' && cp <= 'Z');
  }
  if (cp < 0xC0) {
    // ª µ º and superscript digits are word characters in this block.
    return cp == 0xAA || cp == 0xB5 || cp == 0xBA || cp == 0xB2 ||
           cp == 0xB3 || cp == 0xB9;
  }
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp == 0xFFFD) return false;
  return !IsSpace(cp);
}

char32_t ToLower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x17F) {
    // Latin Extended-A alternates upper/lower, with a parity shift between
    // U+0139 and U+0148 and again from U+0179.
    bool shifted = (cp >= 0x139 && cp <= 0x148) || cp >= 0x179;
    if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
    bool upper = shifted ? (cp % 2 == 1) : (cp % 2 == 0);
    return upper ? cp + 1 : cp;
  }
  return cp;
}

std::string ToLower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) Append(out, ToLower(Next(text, pos)));
  return out;
}

namespace {

char32_t StripDiacritic(char32_t cp) {
  static constexpr std::u32string_view kLatin1 =
      U"aaaaaaaceeeeiiiidñooooo÷ouuuuyty";  // U+00E0..U+00FF, ñ kept
  if (cp >= 0xE0 && cp <= 0xFF) {
    char32_t base = kLatin1[cp - 0xE0];
    return base == U'÷' ? cp : base;
  }
  return cp;
}

}  // namespace

std::string FoldAccents(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) Append(out, StripDiacritic(ToLower(Next(text, pos))));
  return out;
}

size_t Length(std::string_view text) {
  size_t n = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    Next(text, pos);
    ++n;
  }
  return n;
}

std::vector<size_t> CodePointIndex(std::string_view text) {
  std::vector<size_t> index(text.size() + 1);
  size_t pos = 0, n = 0;
  while (pos < text.size()) {
    size_t start = pos;
    Next(text, pos);
    for (size_t b = start; b < pos; ++b) index[b] = n;
    ++n;
  }
  index[text.size()] = n;
  return index;
}

std::string_view Slice(std::string_view text, size_t begin, size_t end) {
  size_t pos = 0, n = 0, from = text.size();
  while (pos < text.size() && n < end) {
    if (n == begin) from = pos;
    Next(text, pos);
    ++n;
  }
  if (begin >= n) return {};
  return text.substr(from, pos - from);
}

std::u32string Decode(std::string_view text) {
  std::u32string out;
  size_t pos = 0;
  while (pos < text.size()) out.push_back(Next(text, pos));
  return out;
}

size_t EditDistance(std::string_view a, std::string_view b) {
  std::u32string x = Decode(a);
  std::u32string y = Decode(b);
  std::vector<size_t> prev(y.size() + 1), cur(y.size() + 1);
  for (size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= y.size(); ++j) {
      size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

}  // namespace clinorm::utf8
