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

// Sentence-level text similarity (BLEU, ROUGE-1/L, exact-match METEOR) and a
// triplet-based clinical proxy, plus corpus-level aggregation by region.

#ifndef RADAUG_METRICS_H_
#define RADAUG_METRICS_H_

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "radaug/corpus.h"
#include "radaug/triplets.h"

namespace radaug {

using TokenSeq = std::vector<std::string>;

// Lowercase tokens split on every run of non-alphanumeric ASCII characters.
TokenSeq Tokenize(std::string_view text);

// Clipped n-gram precision with brevity penalty against the closest
// reference length (shorter wins ties). When any order has zero matches,
// orders >= 2 use (matches + 1) / (total + 1). Throws kEmptyPrediction /
// kEmptyReference for empty inputs.
double Bleu(const TokenSeq &pred, const std::vector<TokenSeq> &refs,
            int max_n = 4);

struct RougeScores {
  double rouge1_f = 0.0;
  double rougeL_f = 0.0;
};

inline constexpr double kRougeBeta = 1.2;

RougeScores Rouge(const TokenSeq &pred, const TokenSeq &ref);

size_t LcsLength(const TokenSeq &a, const TokenSeq &b);

inline constexpr double kMeteorAlpha = 0.9;
inline constexpr double kMeteorBeta = 3.0;
inline constexpr double kMeteorGamma = 0.5;

struct MeteorAlignment {
  size_t matches = 0;
  size_t chunks = 0;
  // False if the search hit its node budget; the alignment is then the best
  // one found, which is still maximal in matches.
  bool optimal = true;
};

// Maximum one-to-one exact-token alignment with the fewest chunks, found by
// branch and bound seeded with a greedy block tiling.
MeteorAlignment AlignForMeteor(const TokenSeq &pred, const TokenSeq &ref,
                               size_t node_budget = 2'000'000);

double MeteorFromAlignment(const MeteorAlignment &a, size_t pred_len,
                           size_t ref_len);

double Meteor(const TokenSeq &pred, const TokenSeq &ref);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Set-level P/R/F1 over canonical triplets; a predicted triplet is correct iff
// the reference holds the identical (entity, position, exist).
PrecisionRecall TripletScores(const std::vector<Triplet> &pred,
                              const std::vector<Triplet> &ref);

PrecisionRecall TripletF1(std::string_view pred_text, std::string_view ref_text,
                          const Lexicon &lexicon, const CanonicalMap &map);

struct ExternalScore {
  std::string id;
  Region region = Region::kChest;
  std::string metric;
  double score = 0.0;
};

// JSONL {"id": .., "region": .., "metric": .., "score": ..}.
std::vector<ExternalScore> ParseExternalScores(std::istream &in);
std::vector<ExternalScore> LoadExternalScores(const std::string &path);

struct EvalConfig {
  // Any of bleu, rouge1, rougeL, meteor, triplet_precision, triplet_recall,
  // triplet_f1. Triplet metrics need a lexicon.
  std::vector<std::string> metrics;
  int max_n = 4;
  const Lexicon *lexicon = nullptr;
  const CanonicalMap *map = nullptr;
  std::vector<ExternalScore> external;
  int jobs = 1;
};

std::vector<std::string> DefaultMetrics(bool with_triplets);

struct MetricReport {
  std::map<Region, std::map<std::string, double>> per_region;
  std::map<Region, size_t> cases;
  std::map<std::string, double> averages;

  nlohmann::json ToJson() const;
};

// Scores each reference (report, region) against the prediction corpus's
// generated text, averages per region, then takes the unweighted mean of
// the regions as the average. A missing generated text scores 0.
MetricReport EvaluateCorpus(const Corpus &pred, const Corpus &ref,
                            const EvalConfig &config);

}  // namespace radaug

#endif  // RADAUG_METRICS_H_
