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
#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"
#include "radaug/corpus.h"
#include "radaug/errors.h"

namespace radaug {
namespace {

Corpus Parse(const std::string &text) {
  std::istringstream in(text);
  return ParseCorpus(in);
}

Error ParseError(const std::string &text) {
  try {
    Parse(text);
  } catch (const Error &e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::kIoError, "");
}

TEST_CASE("load minimal corpus") {
  Corpus c = Parse(
      R"({"id":"c1","region":"abdomen","findings":"The liver is normal."})"
      "\n");
  REQUIRE(c.reports.size() == 1);
  CHECK(c.reports[0].id == "c1");
  CHECK(*c.reports[0].Findings(Region::kAbdomen) == "The liver is normal.");
  CHECK(c.reports[0].generated.empty());
}

TEST_CASE("records sharing an id merge") {
  Corpus c = Parse(
      R"({"id":"c1","region":"chest","findings":"Heart normal."})"
      "\n"
      R"({"id":"c2","region":"pelvis","findings":"Bladder normal."})"
      "\n"
      R"({"id":"c1","region":"pelvis","findings":"Prostate normal.","generated":"Prostate enlarged.","extra":1})"
      "\n");
  REQUIRE(c.reports.size() == 2);
  CHECK(c.reports[0].id == "c1");
  CHECK(c.reports[0].findings.size() == 2);
  CHECK(*c.reports[0].Generated(Region::kPelvis) == "Prostate enlarged.");
  CHECK(c.reports[1].id == "c2");
}

TEST_CASE("corpus load errors") {
  Error region = ParseError(R"({"id":"c1","region":"head","findings":"x"})");
  CHECK(region.code() == ErrorCode::kMalformedLine);
  CHECK(region.line() == 1);

  Error json = ParseError("\n{\"id\":");
  CHECK(json.code() == ErrorCode::kMalformedLine);
  CHECK(json.line() == 2);

  Error dup = ParseError(
      R"({"id":"c1","region":"chest","findings":"a"})"
      "\n"
      R"({"id":"c1","region":"chest","findings":"b"})");
  CHECK(dup.code() == ErrorCode::kDuplicateRegion);

  CHECK(ParseError("").code() == ErrorCode::kEmptyCorpus);
  CHECK(ParseError(R"({"id":"c1","region":"chest","findings":"  "})").code() ==
        ErrorCode::kMalformedLine);
  CHECK(ParseError(R"({"id":"c1","region":"chest"})").code() ==
        ErrorCode::kMalformedLine);
  CHECK(ParseError(R"({"id":"c1","region":"chest","findings":"a","generated":7})")
            .code() == ErrorCode::kMalformedLine);
}

Corpus RandomCorpus(std::mt19937 &rng) {
  const std::vector<std::string> snippets = {
      "The liver is normal.", "No pleural effusion.", "Heart normal; lungs clear",
      "Line one.\nLine two.", "Quote \" and backslash \\ and unicode é.",
      "  padded text  "};
  std::uniform_int_distribution<size_t> pick(0, snippets.size() - 1);
  std::uniform_int_distribution<int> count(1, 6);
  std::bernoulli_distribution coin(0.5);
  Corpus c;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Report r;
    r.id = "case-" + std::to_string(i);
    for (Region region : kAllRegions) {
      if (!coin(rng)) continue;
      r.findings[region] = snippets[pick(rng)];
      if (coin(rng)) r.generated[region] = snippets[pick(rng)];
    }
    if (r.findings.empty()) r.findings[Region::kAbdomen] = snippets[0];
    c.reports.push_back(std::move(r));
  }
  std::shuffle(c.reports.begin(), c.reports.end(), rng);
  return c;
}

TEST_CASE("write/load round trip over random corpora") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Corpus c = RandomCorpus(rng);
    std::string text = SerializeCorpus(c);
    CHECK(static_cast<size_t>(std::count(text.begin(), text.end(), '\n')) ==
          c.RecordCount());
    CHECK(Parse(text) == c);
  }
}

TEST_CASE("serialized regions are ordered chest, abdomen, pelvis") {
  Corpus c;
  Report r;
  r.id = "a";
  r.findings[Region::kPelvis] = "p.";
  r.findings[Region::kChest] = "c.";
  r.generated[Region::kChest] = "gen.";
  c.reports.push_back(r);
  std::string text = SerializeCorpus(c);
  CHECK(text ==
        "{\"id\":\"a\",\"region\":\"chest\",\"findings\":\"c.\",\"generated\":"
        "\"gen.\"}\n{\"id\":\"a\",\"region\":\"pelvis\",\"findings\":\"p.\"}\n");
}

TEST_CASE("write refuses empty corpora and unwritable paths") {
  try {
    WriteCorpus(Corpus{}, "/tmp/never-written.jsonl");
    FAIL("expected EmptyCorpus");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kEmptyCorpus);
  }
  CHECK_FALSE(std::filesystem::exists("/tmp/never-written.jsonl"));

  Corpus c;
  c.reports.push_back(Report{"x", {{Region::kChest, "ok."}}, {}});
  try {
    WriteCorpus(c, "/nonexistent-dir/out.jsonl");
    FAIL("expected IoError");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kIoError);
  }

  auto path = std::filesystem::temp_directory_path() / "radaug_corpus_test.jsonl";
  WriteCorpus(c, path.string());
  CHECK(LoadCorpus(path.string()) == c);
  std::filesystem::remove(path);
}

TEST_CASE("missing corpus file") {
  try {
    LoadCorpus("/no/such/corpus.jsonl");
    FAIL("expected MissingFile");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kMissingFile);
  }
}

}  // namespace
}  // namespace radaug
