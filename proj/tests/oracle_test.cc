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

#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "radaug/errors.h"
#include "radaug/oracle.h"

namespace radaug {
namespace {

FileBacked Parse(const std::string &text) {
  std::istringstream in(text);
  return ParseAnswers(in);
}

TEST_CASE("reference answer") {
  Triplet q{"nodules", "lungs", true};
  CHECK(ReferenceAnswer(q, {{"nodules", "lungs", true}}));
  CHECK_FALSE(ReferenceAnswer(q, {}));
  CHECK_FALSE(ReferenceAnswer(q, {{"nodules", "lungs", false}}));
  CHECK_FALSE(ReferenceAnswer(q, {{"nodules", "liver", true}}));
  // The query's own exist flag plays no part.
  CHECK(ReferenceAnswer({"nodules", "lungs", false}, {{"nodules", "lungs", true}}));
}

TEST_CASE("reference answer ignores reference order") {
  std::mt19937 rng(11);
  const std::vector<std::string> words = {"a", "b", "c"};
  std::uniform_int_distribution<size_t> w(0, 2);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 200; ++trial) {
    // Keys must be unique, as report_to_triplets guarantees.
    std::vector<Triplet> refs;
    for (const auto &e : words) {
      for (const auto &p : words) {
        if (coin(rng)) refs.push_back({e, p, coin(rng)});
      }
    }
    Triplet q{words[w(rng)], words[w(rng)], true};
    bool expected = ReferenceAnswer(q, refs);
    std::shuffle(refs.begin(), refs.end(), rng);
    CHECK(ReferenceAnswer(q, refs) == expected);
  }
}

TEST_CASE("reference-derived source over a corpus") {
  Corpus corpus;
  Report r;
  r.id = "c1";
  r.findings[Region::kAbdomen] =
      "A nodular low-density lesion is observed in the right lobe of the liver.";
  r.findings[Region::kChest] = "No nodules are seen in the lungs.";
  corpus.reports.push_back(r);
  Lexicon lex = MakeLexicon(
      {{"low-density lesion", "low-density lesion"}, {"nodules", "nodules"}},
      {{"liver", "liver"}, {"lungs", "lungs"}}, {"no"});
  AnswerSource source = BuildReferenceSource(corpus, lex, CanonicalMap{});
  CHECK(Answer(source, "c1", {"low-density lesion", "liver", true}));
  CHECK_FALSE(Answer(source, "c1", {"nodules", "lungs", true}));
  CHECK_FALSE(Answer(source, "c1", {"cyst", "kidney", true}));
  CHECK_FALSE(Answer(source, "unknown", {"low-density lesion", "liver", true}));
}

TEST_CASE("file-backed answers") {
  FileBacked one = Parse(
      R"({"id":"c1","entity":"Nodules","position":"lungs","answer":true})");
  CHECK(one.answers.size() == 1);
  AnswerSource source = one;
  CHECK(Answer(source, "c1", {"nodules", "lungs", true}));
  try {
    Answer(source, "c1", {"nodules", "liver", true});
    FAIL("expected MissingAnswer");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kMissingAnswer);
    CHECK(std::string(e.what()).find("c1") != std::string::npos);
  }
  try {
    Parse(R"({"id":"c1","entity":"nodules","position":"lungs","answer":true})"
          "\n"
          R"({"id":"c1","entity":"nodules","position":"lungs","answer":false})");
    FAIL("expected DuplicateKey");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kDuplicateKey);
    CHECK(e.line() == 2);
  }
  try {
    Parse(R"({"id":"c1","entity":"nodules","position":"lungs","answer":"yes"})");
    FAIL("expected MalformedLine");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kMalformedLine);
  }
}

TEST_CASE("constant source") {
  CHECK_FALSE(Answer(Constant{false}, "any", {"x", "y", true}));
  CHECK(Answer(Constant{true}, "any", {"x", "", false}));
}

}  // namespace
}  // namespace radaug
