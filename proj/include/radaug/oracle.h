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

// Binary answer sources used by the questioning step of augmentation. They
// stand in for a trained model that answers "is this finding present?".

#ifndef RADAUG_ORACLE_H_
#define RADAUG_ORACLE_H_

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "radaug/corpus.h"
#include "radaug/triplets.h"

namespace radaug {

struct AnswerKey {
  std::string report_id;
  std::string entity;
  std::string position;

  auto operator<=>(const AnswerKey &other) const = default;
};

// Answers from the report's own reference triplets: the stored exist flag
// when the finding is mentioned, false otherwise.
struct ReferenceDerived {
  std::map<std::string, std::vector<Triplet>, std::less<>> triplets_by_report;
};

// Closed-world lookup table, typically produced by an external model.
struct FileBacked {
  std::map<AnswerKey, bool> answers;
};

struct Constant {
  bool value = false;
};

using AnswerSource = std::variant<ReferenceDerived, FileBacked, Constant>;

bool ReferenceAnswer(const Triplet &query,
                     const std::vector<Triplet> &reference_triplets);

// Reference triplets of every region of each report, concatenated in region
// order and deduplicated.
ReferenceDerived BuildReferenceSource(const Corpus &corpus,
                                      const Lexicon &lexicon,
                                      const CanonicalMap &map);

// Answers JSONL: {"id": .., "entity": .., "position": .., "answer": bool}.
FileBacked ParseAnswers(std::istream &in);
FileBacked LoadAnswers(const std::string &path);

// Throws kMissingAnswer when a file-backed source has no entry for the query.
bool Answer(const AnswerSource &source, std::string_view report_id,
            const Triplet &query);

}  // namespace radaug

#endif  // RADAUG_ORACLE_H_
