// Copyright 2026 The radaug Authors.
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

#include "radaug/text.h"

namespace radaug {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

char LowerAscii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

bool IsWordChar(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z') || u >= 0x80;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char &c : out) c = LowerAscii(c);
  return out;
}

std::string_view Trim(std::string_view text) {
  size_t b = 0;
  size_t e = text.size();
  while (b < e && IsSpace(text[b])) ++b;
  while (e > b && IsSpace(text[e - 1])) --e;
  return text.substr(b, e - b);
}

std::string NormalizePhrase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : Trim(text)) {
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(LowerAscii(c));
  }
  return out;
}

bool IsNormalizedPhrase(std::string_view phrase) {
  return !phrase.empty() && NormalizePhrase(phrase) == phrase;
}

std::vector<Span> FindPhrase(std::string_view haystack,
                             std::string_view phrase) {
  std::vector<Span> hits;
  if (phrase.empty()) return hits;
  size_t pos = haystack.find(phrase);
  while (pos != std::string_view::npos) {
    size_t end = pos + phrase.size();
    bool left_ok = pos == 0 || !IsWordChar(haystack[pos - 1]) ||
                   !IsWordChar(phrase.front());
    bool right_ok = end == haystack.size() || !IsWordChar(haystack[end]) ||
                    !IsWordChar(phrase.back());
    if (left_ok && right_ok) hits.push_back({pos, end});
    pos = haystack.find(phrase, pos + 1);
  }
  return hits;
}

bool ContainsPhrase(std::string_view haystack, std::string_view phrase) {
  return !FindPhrase(haystack, phrase).empty();
}

}  // namespace radaug
