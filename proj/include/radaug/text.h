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

// Low-level string helpers shared by the extraction, augmentation and metric
// code. All case folding is ASCII-only; bytes >= 0x80 are treated as word
// characters so UTF-8 sequences are never split by boundary checks.

#ifndef RADAUG_TEXT_H_
#define RADAUG_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace radaug {

bool IsWordChar(char c);

std::string ToLower(std::string_view text);

std::string_view Trim(std::string_view text);

// Lowercases, trims and collapses every whitespace run to a single space.
std::string NormalizePhrase(std::string_view text);

// True if `phrase` is non-empty and already in NormalizePhrase form.
bool IsNormalizedPhrase(std::string_view phrase);

// Half-open byte range into a haystack.
struct Span {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool Overlaps(const Span &other) const {
    return begin < other.end && other.begin < end;
  }
  bool operator==(const Span &other) const = default;
};

// Returns every occurrence of `phrase` in `haystack` that starts and ends on a
// word boundary. Both arguments are compared byte-wise, so callers normalize
// them first. Occurrences may overlap.
std::vector<Span> FindPhrase(std::string_view haystack, std::string_view phrase);

// True if `phrase` occurs in `haystack` on word boundaries.
bool ContainsPhrase(std::string_view haystack, std::string_view phrase);

}  // namespace radaug

#endif  // RADAUG_TEXT_H_
