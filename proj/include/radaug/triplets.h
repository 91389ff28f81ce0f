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

// Rule-based {entity, position, exist} extraction from findings text.
//
// A Lexicon lists surface forms for entities and positions together with the
// canonical string each one reports, plus the negation cues. Extraction works
// one sentence at a time:
//
//   1. The sentence is lowercased and whitespace-collapsed.
//   2. Entity mentions are found left to right, longest surface form first,
//      on word boundaries. Position mentions are found the same way, skipping
//      any that overlap an entity mention.
//   3. Each entity is paired with the nearest position mention (ties go to
//      the one after the entity). exist is false iff a negation cue ends
//      before the entity starts.
//   4. A sentence with positions but no entities yields one position-only
//      triplet per position.
//
// A CanonicalMap then folds surface variations of the same finding onto one
// triplet.

#ifndef RADAUG_TRIPLETS_H_
#define RADAUG_TRIPLETS_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace radaug {

struct Triplet {
  std::string entity;
  std::string position;
  bool exist = true;

  // Same finding regardless of polarity.
  bool SameKey(const Triplet &other) const {
    return entity == other.entity && position == other.position;
  }
  bool operator==(const Triplet &other) const = default;
  auto operator<=>(const Triplet &other) const = default;
};

// Builds a triplet with normalized fields. Throws kInvalidTriplet if both
// fields normalize to empty.
Triplet MakeTriplet(std::string_view entity, std::string_view position,
                    bool exist = true);

// Throws kInvalidTriplet unless `t` satisfies the triplet invariants.
void ValidateTriplet(const Triplet &t);

struct Lexicon {
  struct Term {
    std::string surface;
    std::string canonical;
  };
  std::vector<Term> entities;
  std::vector<Term> positions;
  std::vector<std::string> negation_cues;
};

// Normalizes surface forms and checks uniqueness within each list.
Lexicon MakeLexicon(std::vector<std::pair<std::string, std::string>> entities,
                    std::vector<std::pair<std::string, std::string>> positions,
                    std::vector<std::string> negation_cues);
void ValidateLexicon(const Lexicon &lexicon);

Lexicon LexiconFromJson(const nlohmann::json &doc);
Lexicon LoadLexicon(const std::string &path);

struct CanonicalRule {
  std::string from_entity;
  std::string from_position;
  std::string to_entity;
  std::string to_position;
};

class CanonicalMap {
 public:
  CanonicalMap() = default;

  // Throws kInvalidConfig if a rule's target is rewritten by another rule,
  // which would make the map non-idempotent.
  explicit CanonicalMap(std::vector<CanonicalRule> rules);

  const std::vector<CanonicalRule> &rules() const { return rules_; }

  // First matching rule wins; exist is carried over.
  Triplet Apply(const Triplet &t) const;

 private:
  const CanonicalRule *Match(std::string_view entity,
                             std::string_view position) const;

  std::vector<CanonicalRule> rules_;
};

CanonicalMap CanonicalMapFromJson(const nlohmann::json &doc);
CanonicalMap LoadCanonicalMap(const std::string &path);

struct Question {
  std::string text;
  Triplet source;
};

// Splits on '.', ';' and newlines, keeping the terminating '.' or ';' on each
// sentence. A '.' between two digits ("3.5 cm") is not a boundary. Sentences
// are trimmed; whitespace-only fragments are dropped.
std::vector<std::string> SplitSentences(std::string_view findings);

std::vector<Triplet> ExtractTriplets(std::string_view sentence,
                                     const Lexicon &lexicon);

Triplet Canonicalize(const Triplet &t, const CanonicalMap &map);

Question RenderQuestion(const Triplet &t);

// Canonical triplets of a whole report, deduplicated on (entity, position)
// keeping the first occurrence. A later duplicate with the opposite exist flag
// adds a message to `warnings` when it is non-null.
std::vector<Triplet> ReportToTriplets(std::string_view report_text,
                                      const Lexicon &lexicon,
                                      const CanonicalMap &map,
                                      std::vector<std::string> *warnings =
                                          nullptr);

nlohmann::ordered_json TripletToJson(const Triplet &t);

}  // namespace radaug

#endif  // RADAUG_TRIPLETS_H_
