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

#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "radaug/cli.h"
#include "radaug/corpus.h"
#include "test_util.h"

namespace radaug::cli {
namespace {

using nlohmann::json;
using test::DataFile;
using test::ReadFile;
using test::TempDir;
using test::WriteFile;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Call(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

size_t Lines(const std::string &s) {
  return static_cast<size_t>(std::count(s.begin(), s.end(), '\n'));
}

const char *kLiverCorpus =
    R"({"id":"c1","region":"abdomen","findings":"A nodular low-density lesion is observed in the right lobe of the liver. The spleen is normal."})"
    "\n";

TEST_CASE("extract") {
  TempDir dir("extract");
  WriteFile(dir / "corpus.jsonl", kLiverCorpus);
  Result r = Call({"extract", "--corpus", dir / "corpus.jsonl", "--lexicon",
                   DataFile("lexicon.json"), "--map",
                   DataFile("canonical_map.json")});
  REQUIRE(r.code == kExitOk);
  CHECK(Lines(r.out) == 2);
  CHECK(r.out.find(R"("entity":"low-density lesion","position":"liver","exist":true)") !=
        std::string::npos);

  Result missing = Call({"extract", "--corpus", dir / "corpus.jsonl",
                         "--lexicon", dir / "nope.json"});
  CHECK(missing.code == kExitValidation);
  CHECK(missing.err.find(dir / "nope.json") != std::string::npos);
  CHECK(missing.out.empty());

  WriteFile(dir / "bad.jsonl", R"({"id":"c1","region":"head","findings":"x"})");
  Result bad = Call({"extract", "--corpus", dir / "bad.jsonl", "--lexicon",
                     DataFile("lexicon.json")});
  CHECK(bad.code == kExitData);
  CHECK(bad.err.find("line 1") != std::string::npos);

  CHECK(Call({"extract", "--lexicon", DataFile("lexicon.json")}).code ==
        kExitValidation);
  CHECK(Call({"extract", "--bogus"}).code == kExitValidation);
}

TEST_CASE("extract generated field and warnings") {
  TempDir dir("extract_gen");
  WriteFile(dir / "corpus.jsonl",
            R"({"id":"c1","region":"chest","findings":"Heart normal.","generated":"Nodules in the lungs. No nodules in the lungs."})"
            "\n");
  Result r = Call({"extract", "--corpus", dir / "corpus.jsonl", "--lexicon",
                   DataFile("lexicon.json"), "--field", "generated"});
  CHECK(r.code == kExitOk);
  CHECK(Lines(r.out) == 1);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("canonicalize and questions") {
  TempDir dir("canon");
  WriteFile(dir / "t.jsonl",
            R"({"id":"c1","region":"abdomen","entity":"enlargement","position":"lymph nodes in the retroperitoneum","exist":true})"
            "\n"
            R"({"entity":"","position":"liver"})"
            "\n");
  Result c = Call({"canonicalize", "--triplets", dir / "t.jsonl", "--map",
                   DataFile("canonical_map.json")});
  REQUIRE(c.code == kExitOk);
  CHECK(c.out ==
        R"({"id":"c1","region":"abdomen","entity":"enlargement of lymph nodes","position":"retroperitoneum","exist":true})"
        "\n"
        R"({"entity":"","position":"liver","exist":true})"
        "\n");

  Result q = Call({"questions", "--triplets", dir / "t.jsonl"});
  REQUIRE(q.code == kExitOk);
  CHECK(q.out.find("Is there enlargement in the lymph nodes in the "
                   "retroperitoneum?") != std::string::npos);
  CHECK(q.out.find("Is the liver normal?") != std::string::npos);

  Result kb = Call({"questions", "--kb", DataFile("kb.json")});
  REQUIRE(kb.code == kExitOk);
  CHECK(Lines(kb.out) == 9);
  CHECK(kb.out.find("Is there nodules in the lungs?") != std::string::npos);

  CHECK(Call({"questions"}).code == kExitValidation);
  WriteFile(dir / "empty_triplet.jsonl", R"({"entity":"","position":""})");
  CHECK(Call({"questions", "--triplets", dir / "empty_triplet.jsonl"}).code ==
        kExitData);
}

std::vector<std::string> AugmentArgs(const std::string &corpus,
                                     const std::string &out) {
  return {"augment", "--corpus", corpus, "--kb", DataFile("kb.json"),
          "--normality", DataFile("normality.json"), "--lexicon",
          DataFile("lexicon.json"), "--map", DataFile("canonical_map.json"),
          "--out", out};
}

TEST_CASE("augment composition") {
  TempDir dir("augment");
  const std::string corpus = DataFile("sample_corpus.jsonl");
  REQUIRE(Call(AugmentArgs(corpus, dir / "full.jsonl")).code == kExitOk);

  auto bq = AugmentArgs(corpus, dir / "bq.jsonl");
  bq.push_back("--bq-only");
  REQUIRE(Call(bq).code == kExitOk);
  auto nn = AugmentArgs(dir / "bq.jsonl", dir / "bq_nn.jsonl");
  nn.push_back("--nn-only");
  REQUIRE(Call(nn).code == kExitOk);
  CHECK(ReadFile(dir / "bq_nn.jsonl") == ReadFile(dir / "full.jsonl"));
  CHECK_FALSE(ReadFile(dir / "bq.jsonl") == ReadFile(dir / "full.jsonl"));

  // Provenance: every appended sentence, tagged with its source.
  Corpus in = LoadCorpus(corpus), out = LoadCorpus(dir / "full.jsonl");
  std::istringstream prov(ReadFile(dir / "full.jsonl.provenance.jsonl"));
  std::string line;
  size_t records = 0;
  while (std::getline(prov, line)) {
    ++records;
    json rec = json::parse(line);
    Region region = *ParseRegion(rec["region"].get<std::string>());
    std::string expected = *in.Find(rec["id"].get<std::string>())->Generated(region);
    for (const json &item : rec["appended"]) {
      std::string source = item["source"];
      CHECK((source == "bq" || source == "nn"));
      if (source == "bq") CHECK(item.contains("entity"));
      expected += " " + item["sentence"].get<std::string>();
    }
    CHECK(expected == *out.Find(rec["id"].get<std::string>())->Generated(region));
  }
  CHECK(records == 7);

  auto parallel = AugmentArgs(corpus, dir / "par.jsonl");
  parallel.insert(parallel.end(), {"--jobs", "4"});
  REQUIRE(Call(parallel).code == kExitOk);
  CHECK(ReadFile(dir / "par.jsonl") == ReadFile(dir / "full.jsonl"));
}

TEST_CASE("augment with nothing to add") {
  TempDir dir("augment_noop");
  Result r = Call({"augment", "--corpus", DataFile("sample_corpus.jsonl"),
                   "--out", dir / "out.jsonl"});
  REQUIRE(r.code == kExitOk);
  CHECK(LoadCorpus(dir / "out.jsonl") == LoadCorpus(DataFile("sample_corpus.jsonl")));
}

TEST_CASE("augment oracles and errors") {
  TempDir dir("augment_oracle");
  const std::string corpus = DataFile("sample_corpus.jsonl");
  auto with = [&](std::vector<std::string> extra) {
    auto args = AugmentArgs(corpus, dir / "o.jsonl");
    args.insert(args.end(), extra.begin(), extra.end());
    return Call(args);
  };
  CHECK(with({"--oracle", "const:true"}).code == kExitOk);
  CHECK(with({"--oracle", "maybe"}).code == kExitValidation);
  CHECK(with({"--oracle", "file:" + dir / "missing.jsonl"}).code ==
        kExitValidation);
  WriteFile(dir / "answers.jsonl",
            R"({"id":"case-001","entity":"nodules","position":"lungs","answer":true})");
  // The table lacks most keys.
  CHECK(with({"--oracle", "file:" + dir / "answers.jsonl"}).code == kExitData);
  CHECK(with({"--bq-only", "--nn-only"}).code == kExitValidation);
}

TEST_CASE("evaluate") {
  TempDir dir("evaluate");
  // Generated text equal to the findings scores 1 on every overlap metric.
  Corpus c = LoadCorpus(DataFile("sample_corpus.jsonl"));
  for (Report &r : c.reports) r.generated = r.findings;
  WriteCorpus(c, dir / "same.jsonl");
  Result r = Call({"evaluate", "--pred", dir / "same.jsonl", "--lexicon",
                   DataFile("lexicon.json"), "--map",
                   DataFile("canonical_map.json")});
  REQUIRE(r.code == kExitOk);
  json doc = json::parse(r.out);
  for (const char *m : {"bleu", "rouge1", "rougeL", "triplet_f1"}) {
    CHECK(doc["averages"][m].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(doc["averages"]["meteor"].get<double>() > 0.99);

  Result scored = Call({"evaluate", "--pred", DataFile("sample_corpus.jsonl"),
                        "--lexicon", DataFile("lexicon.json")});
  REQUIRE(scored.code == kExitOk);
  json base = json::parse(scored.out);
  for (const auto &[metric, value] : base["averages"].items()) {
    double sum = 0;
    for (const auto &[region, scores] : base["per_region"].items()) {
      sum += scores[metric].get<double>();
    }
    CHECK(value.get<double>() == doctest::Approx(sum / 3).epsilon(1e-12));
  }

  std::string ext;
  for (const Report &rep : c.reports) {
    for (const auto &[region, text] : rep.findings) {
      ext += R"({"id":")" + rep.id + R"(","region":")" +
             std::string(RegionName(region)) + R"(","metric":"green","score":0.5})" +
             "\n";
    }
  }
  WriteFile(dir / "ext.jsonl", ext);
  Result merged = Call({"evaluate", "--pred", DataFile("sample_corpus.jsonl"),
                        "--lexicon", DataFile("lexicon.json"),
                        "--external-scores", dir / "ext.jsonl"});
  REQUIRE(merged.code == kExitOk);
  json m = json::parse(merged.out);
  CHECK(m["averages"]["green"].get<double>() == doctest::Approx(0.5));
  for (const auto &[metric, value] : base["averages"].items()) {
    CHECK(m["averages"][metric] == value);
  }

  CHECK(Call({"evaluate", "--pred", DataFile("sample_corpus.jsonl"),
              "--metrics", "triplet_f1"})
            .code == kExitValidation);
  CHECK(Call({"evaluate", "--pred", DataFile("sample_corpus.jsonl"),
              "--metrics", "bleu,nonsense"})
            .code == kExitValidation);
}

TEST_CASE("vol3d info") {
  Result full = Call({"vol3d", "info", "--vol", "64,512,512", "--patch",
                       "4,16,16", "--crop", "32,256,256", "--global",
                       "32,256,256"});
  REQUIRE(full.code == kExitOk);
  json doc = json::parse(full.out);
  CHECK(doc["anyres"]["num_crops"] == 8);
  CHECK(doc["anyres"]["crops"].size() == 8);
  CHECK(doc["sequence_length"] == 9 * 2048);

  Result plain = Call({"vol3d", "info", "--vol", "32,256,256", "--patch", "4,16,16"});
  REQUIRE(plain.code == kExitOk);
  CHECK(json::parse(plain.out)["vit_tokens_full_volume"] == 2048);

  Result spp = Call({"vol3d", "info", "--vol", "32,256,256", "--patch",
                     "4,16,16", "--projector", "spp", "--with-mask", "--forward",
                     "--embed-dim", "4", "--out-dim", "8"});
  REQUIRE(spp.code == kExitOk);
  json s = json::parse(spp.out);
  CHECK(s["projector"]["tokens_out_per_view"] == 256);
  CHECK(s["sequence_length"] == 512);
  CHECK(s["forward"]["output_tokens"] == 512);

  Result bad = Call({"vol3d", "info", "--vol", "33,256,256", "--patch", "4,16,16"});
  CHECK(bad.code == kExitValidation);
  CHECK(bad.err.find("depth") != std::string::npos);
  CHECK(bad.err.find("nearest valid sizes: 32 or 36") != std::string::npos);

  CHECK(Call({"vol3d", "info", "--vol", "32,256", "--patch", "4,16,16"}).code ==
        kExitValidation);
  CHECK(Call({"vol3d", "info", "--vol", "64,512,512", "--patch", "4,16,16",
              "--crop", "32,256,256"})
            .code == kExitValidation);
  CHECK(Call({"vol3d", "info", "--vol", "32,256,256", "--patch", "4,16,16",
              "--projector", "perceiver"})
            .code == kExitValidation);
}

TEST_CASE("config file with flag override") {
  TempDir dir("config");
  WriteFile(dir / "cfg.json",
            R"({"vol":"33,256,256","patch":[4,16,16],"projector":"spp"})");
  CHECK(Call({"--config", dir / "cfg.json", "vol3d", "info"}).code ==
        kExitValidation);
  Result over = Call({"vol3d", "info", "--config", dir / "cfg.json", "--vol",
                      "32,256,256"});
  REQUIRE(over.code == kExitOk);
  json doc = json::parse(over.out);
  CHECK(doc["volume"] == json::array({32, 256, 256}));
  CHECK(doc["projector"]["type"] == "spp");
  CHECK(Call({"--config", dir / "missing.json", "vol3d", "info"}).code ==
        kExitValidation);
}

TEST_CASE("help exits cleanly") {
  Result r = Call({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("augment") != std::string::npos);
}

TEST_CASE("every command is byte-reproducible across processes") {
  TempDir dir("repro");
  WriteFile(dir / "t.jsonl",
            R"({"id":"c1","region":"abdomen","entity":"enlargement","position":"lymph nodes in the retroperitoneum","exist":true})"
            "\n");
  const std::string corpus = DataFile("sample_corpus.jsonl");
  const std::vector<std::vector<std::string>> commands = {
      {"extract", "--corpus", corpus, "--lexicon", DataFile("lexicon.json"),
       "--map", DataFile("canonical_map.json")},
      {"canonicalize", "--triplets", dir / "t.jsonl", "--map",
       DataFile("canonical_map.json")},
      {"questions", "--kb", DataFile("kb.json")},
      {"augment", "--corpus", corpus, "--kb", DataFile("kb.json"),
       "--normality", DataFile("normality.json"), "--lexicon",
       DataFile("lexicon.json"), "--provenance", dir / "prov.jsonl",
       "--jobs", "3"},
      {"evaluate", "--pred", corpus, "--lexicon", DataFile("lexicon.json"),
       "--jobs", "3"},
      {"vol3d", "info", "--vol", "32,64,64", "--patch", "4,16,16",
       "--projector", "tokenpacker", "--down", "2,2,2", "--forward",
       "--with-mask"},
  };
  for (const auto &cmd : commands) {
    CAPTURE(cmd[0]);
    REQUIRE(test::RunTool(cmd, dir / "a.out", dir / "a.err") == 0);
    std::string prov_a = ReadFile(dir / "prov.jsonl");
    REQUIRE(test::RunTool(cmd, dir / "b.out", dir / "b.err") == 0);
    CHECK(!ReadFile(dir / "a.out").empty());
    CHECK(ReadFile(dir / "a.out") == ReadFile(dir / "b.out"));
    CHECK(prov_a == ReadFile(dir / "prov.jsonl"));
  }
}

}  // namespace
}  // namespace radaug::cli
