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

// Knowledge-based report augmentation.
//
// Two passes run over a generated report, both append-only:
//
//  * Binary questioning: every knowledge-base entry for the region whose
//    guard keywords are absent is answered by an AnswerSource, and the
//    entry's positive or negative finding is appended.
//  * Normality: every normality rule for the region whose keywords are absent
//    appends its normal finding.
//
// Keyword checks always run against the text as augmented so far.

#ifndef RADAUG_AUGMENT_H_
#define RADAUG_AUGMENT_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "radaug/corpus.h"
#include "radaug/oracle.h"
#include "radaug/triplets.h"

namespace radaug {

struct CommonTripletEntry {
  Region region = Region::kChest;
  Triplet triplet;  // exist is ignored
  std::vector<std::string> guard_keywords;
  std::string positive_finding;
  std::string negative_finding;
};

struct KnowledgeBase {
  std::vector<CommonTripletEntry> entries;
};

struct NormalityRule {
  Region region = Region::kChest;
  std::vector<std::string> required_keywords;
  std::string normal_finding;
};

struct BqFinding {
  std::string sentence;
  Triplet triplet;  // exist holds the answer that selected `sentence`
};

struct NnFinding {
  std::string sentence;
  std::vector<std::string> keywords;
};

struct AugmentedReport {
  std::string id;
  Region region = Region::kChest;
  std::string original_generated;
  std::vector<BqFinding> appended_bq;
  std::vector<NnFinding> appended_nn;
  std::string final_text;
};

// Validation throws kInvalidConfig (kEmptyKeywordList for empty keyword
// lists). Keywords and triplet fields are normalized first.
void ValidateKnowledgeBase(KnowledgeBase &kb);
void ValidateNormalityRules(std::vector<NormalityRule> &rules);

KnowledgeBase KnowledgeBaseFromJson(const nlohmann::json &doc);
KnowledgeBase LoadKnowledgeBase(const std::string &path);
std::vector<NormalityRule> NormalityRulesFromJson(const nlohmann::json &doc);
std::vector<NormalityRule> LoadNormalityRules(const std::string &path);

// One keyword: present anywhere on word boundaries. Several keywords: all of
// them inside a single sentence.
bool KeywordPresent(std::string_view report_text,
                    const std::vector<std::string> &keywords);

// Appends `sentence` with a single separating space.
std::string AppendSentence(std::string_view text, std::string_view sentence);

AugmentedReport BqAugment(const Report &report, Region region,
                          const KnowledgeBase &kb, const AnswerSource &source);

struct NnResult {
  std::string text;
  std::vector<NnFinding> appended;
};

NnResult NnAugment(std::string_view report_text, Region region,
                   const std::vector<NormalityRule> &rules);

struct AugmentOptions {
  bool binary_questioning = true;
  bool naive_normality = true;
};

AugmentedReport AugmentPipeline(const Report &report, Region region,
                                const KnowledgeBase &kb,
                                const std::vector<NormalityRule> &rules,
                                const AnswerSource &source,
                                const AugmentOptions &options = {});

}  // namespace radaug

#endif  // RADAUG_AUGMENT_H_
