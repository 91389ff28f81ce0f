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

#include "radaug/cli.h"

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "file_util.h"
#include "radaug/augment.h"
#include "radaug/corpus.h"
#include "radaug/errors.h"
#include "radaug/metrics.h"
#include "radaug/parallel.h"
#include "radaug/text.h"
#include "radaug/triplets.h"

namespace radaug::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Everything a run can be configured with. Paths left empty are unused.
struct RunConfig {
  std::string corpus;
  std::string pred;
  std::string ref;
  std::string lexicon;
  std::string map;
  std::string kb;
  std::string normality;
  std::string triplets;
  std::string oracle = "reference";
  std::string field = "findings";
  std::string metrics;
  std::string external_scores;
  std::string out;
  std::string provenance;
  bool bq_only = false;
  bool nn_only = false;
  int max_n = 4;
  int jobs = 1;

  std::string vol;
  std::string patch;
  std::string crop;
  std::string global;
  std::string projector = "mlp";
  std::string pool = "2,2,2";
  std::string down = "2,2,2";
  bool with_mask = false;
  bool forward = false;
  int64_t embed_dim = 16;
  int64_t out_dim = 32;
  uint64_t seed = 0;
};

void RequireFile(const std::string &path, const char *what) {
  if (path.empty()) return;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kMissingFile,
                std::string(what) + " file not found: " + path);
  }
}

void RequireSet(const std::string &value, const char *flag) {
  if (value.empty()) {
    throw Error(ErrorCode::kInvalidConfig, std::string(flag) + " is required");
  }
}

// Sends the payload to --out, or to `out` when no file was given.
void Emit(const RunConfig &config, const std::string &payload,
          std::ostream &out) {
  if (config.out.empty() || config.out == "-") {
    out << payload;
  } else {
    internal::WriteText(config.out, payload);
  }
}

std::vector<json> ReadJsonLines(const std::string &path) {
  std::ifstream in = internal::OpenInput(path);
  std::vector<json> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json rec = json::parse(line);
      if (!rec.is_object()) throw std::runtime_error("not a JSON object");
      records.push_back(std::move(rec));
    } catch (const std::exception &e) {
      throw Error(ErrorCode::kMalformedLine,
                  path + " line " + std::to_string(line_no) + ": " + e.what(),
                  line_no);
    }
  }
  return records;
}

Triplet TripletFromRecord(const json &rec, const std::string &where) {
  try {
    return MakeTriplet(rec.value("entity", std::string()),
                       rec.value("position", std::string()),
                       rec.value("exist", true));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedLine, where + ": " + e.what());
  } catch (const Error &e) {
    throw Error(ErrorCode::kMalformedLine, where + ": " + e.what());
  }
}

CanonicalMap MaybeLoadMap(const std::string &path) {
  return path.empty() ? CanonicalMap() : LoadCanonicalMap(path);
}

int CmdExtract(const RunConfig &c, std::ostream &out, std::ostream &err) {
  RequireSet(c.corpus, "--corpus");
  RequireSet(c.lexicon, "--lexicon");
  RequireFile(c.corpus, "corpus");
  RequireFile(c.lexicon, "lexicon");
  RequireFile(c.map, "canonical map");
  if (c.field != "findings" && c.field != "generated") {
    throw Error(ErrorCode::kInvalidConfig,
                "--field must be findings or generated");
  }
  Lexicon lexicon = LoadLexicon(c.lexicon);
  CanonicalMap map = MaybeLoadMap(c.map);
  Corpus corpus = LoadCorpus(c.corpus);

  std::string payload;
  for (const Report &r : corpus.reports) {
    const auto &texts = c.field == "findings" ? r.findings : r.generated;
    for (const auto &[region, text] : texts) {
      std::vector<std::string> warnings;
      for (const Triplet &t : ReportToTriplets(text, lexicon, map, &warnings)) {
        ordered_json rec;
        rec["id"] = r.id;
        rec["region"] = RegionName(region);
        rec["entity"] = t.entity;
        rec["position"] = t.position;
        rec["exist"] = t.exist;
        payload += rec.dump() + "\n";
      }
      for (const std::string &w : warnings) {
        err << "warning: " << r.id << "/" << RegionName(region) << ": " << w
            << "\n";
      }
    }
  }
  Emit(c, payload, out);
  return kExitOk;
}

int CmdCanonicalize(const RunConfig &c, std::ostream &out, std::ostream &) {
  RequireSet(c.triplets, "--triplets");
  RequireSet(c.map, "--map");
  RequireFile(c.triplets, "triplets");
  RequireFile(c.map, "canonical map");
  CanonicalMap map = LoadCanonicalMap(c.map);
  std::string payload;
  int line = 0;
  for (json rec : ReadJsonLines(c.triplets)) {
    ++line;
    Triplet t = Canonicalize(
        TripletFromRecord(rec, c.triplets + " record " + std::to_string(line)),
        map);
    rec["entity"] = t.entity;
    rec["position"] = t.position;
    rec["exist"] = t.exist;
    ordered_json ordered;
    for (const char *key : {"id", "region"}) {
      if (rec.contains(key)) ordered[key] = rec[key];
    }
    ordered["entity"] = t.entity;
    ordered["position"] = t.position;
    ordered["exist"] = t.exist;
    payload += ordered.dump() + "\n";
  }
  Emit(c, payload, out);
  return kExitOk;
}

int CmdQuestions(const RunConfig &c, std::ostream &out, std::ostream &) {
  if (c.triplets.empty() == c.kb.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "give exactly one of --triplets or --kb");
  }
  std::string payload;
  auto emit = [&](ordered_json rec, const Triplet &t) {
    rec["question"] = RenderQuestion(t).text;
    rec["entity"] = t.entity;
    rec["position"] = t.position;
    rec["exist"] = t.exist;
    payload += rec.dump() + "\n";
  };
  if (!c.kb.empty()) {
    RequireFile(c.kb, "knowledge base");
    for (const CommonTripletEntry &e : LoadKnowledgeBase(c.kb).entries) {
      ordered_json rec;
      rec["region"] = RegionName(e.region);
      emit(std::move(rec), e.triplet);
    }
  } else {
    RequireFile(c.triplets, "triplets");
    int line = 0;
    for (const json &in : ReadJsonLines(c.triplets)) {
      ++line;
      ordered_json rec;
      for (const char *key : {"id", "region"}) {
        if (in.contains(key)) rec[key] = in[key];
      }
      emit(std::move(rec),
           TripletFromRecord(in, c.triplets + " record " + std::to_string(line)));
    }
  }
  Emit(c, payload, out);
  return kExitOk;
}

int CmdAugment(const RunConfig &c, std::ostream &out, std::ostream &) {
  RequireSet(c.corpus, "--corpus");
  RequireFile(c.corpus, "corpus");
  RequireFile(c.kb, "knowledge base");
  RequireFile(c.normality, "normality rules");
  RequireFile(c.lexicon, "lexicon");
  RequireFile(c.map, "canonical map");
  if (c.bq_only && c.nn_only) {
    throw Error(ErrorCode::kInvalidConfig,
                "--bq-only and --nn-only are mutually exclusive");
  }
  if (c.out.empty() || c.out == "-") {
    RequireSet(c.provenance, "--provenance (needed when writing to stdout)");
  }
  OracleSelector selector = ParseOracleSelector(c.oracle);
  AugmentOptions options{!c.nn_only, !c.bq_only};
  bool needs_oracle = options.binary_questioning && !c.kb.empty();
  if (needs_oracle && selector.kind == OracleSelector::Kind::kReference &&
      c.lexicon.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "--oracle reference needs --lexicon");
  }
  if (selector.kind == OracleSelector::Kind::kFile) {
    RequireFile(selector.path, "answers");
  }

  KnowledgeBase kb = c.kb.empty() ? KnowledgeBase() : LoadKnowledgeBase(c.kb);
  std::vector<NormalityRule> rules =
      c.normality.empty() ? std::vector<NormalityRule>()
                          : LoadNormalityRules(c.normality);
  Corpus corpus = LoadCorpus(c.corpus);

  AnswerSource source = Constant{false};
  if (needs_oracle) {
    switch (selector.kind) {
      case OracleSelector::Kind::kReference:
        source = BuildReferenceSource(corpus, LoadLexicon(c.lexicon),
                                      MaybeLoadMap(c.map));
        break;
      case OracleSelector::Kind::kFile:
        source = LoadAnswers(selector.path);
        break;
      case OracleSelector::Kind::kConstant:
        source = Constant{selector.value};
        break;
    }
  }

  struct Work {
    size_t report;
    Region region;
  };
  std::vector<Work> work;
  for (size_t i = 0; i < corpus.reports.size(); ++i) {
    for (const auto &[region, text] : corpus.reports[i].generated) {
      work.push_back({i, region});
    }
  }
  std::vector<std::optional<AugmentedReport>> results(work.size());
  ParallelFor(work.size(), c.jobs, [&](size_t i) {
    results[i] = AugmentPipeline(corpus.reports[work[i].report], work[i].region,
                                 kb, rules, source, options);
  });

  Corpus augmented = corpus;
  std::string provenance;
  for (size_t i = 0; i < work.size(); ++i) {
    const AugmentedReport &a = *results[i];
    augmented.reports[work[i].report].generated[a.region] = a.final_text;
    ordered_json rec;
    rec["id"] = a.id;
    rec["region"] = RegionName(a.region);
    ordered_json appended = ordered_json::array();
    for (const BqFinding &f : a.appended_bq) {
      ordered_json item;
      item["source"] = "bq";
      item["sentence"] = f.sentence;
      item["entity"] = f.triplet.entity;
      item["position"] = f.triplet.position;
      item["answer"] = f.triplet.exist;
      appended.push_back(std::move(item));
    }
    for (const NnFinding &f : a.appended_nn) {
      ordered_json item;
      item["source"] = "nn";
      item["sentence"] = f.sentence;
      item["keywords"] = f.keywords;
      appended.push_back(std::move(item));
    }
    rec["appended"] = std::move(appended);
    provenance += rec.dump() + "\n";
  }

  std::string provenance_path = c.provenance;
  if (provenance_path.empty()) provenance_path = c.out + ".provenance.jsonl";
  Emit(c, SerializeCorpus(augmented), out);
  internal::WriteText(provenance_path, provenance);
  return kExitOk;
}

std::vector<std::string> SplitList(const std::string &text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string_view t = Trim(item);
    if (!t.empty()) items.emplace_back(t);
  }
  return items;
}

int CmdEvaluate(const RunConfig &c, std::ostream &out, std::ostream &) {
  RequireSet(c.pred, "--pred");
  RequireFile(c.pred, "prediction corpus");
  RequireFile(c.ref, "reference corpus");
  RequireFile(c.lexicon, "lexicon");
  RequireFile(c.map, "canonical map");
  RequireFile(c.external_scores, "external scores");
  if (c.max_n < 1) throw Error(ErrorCode::kInvalidConfig, "--max-n must be >= 1");

  std::optional<Lexicon> lexicon;
  if (!c.lexicon.empty()) lexicon = LoadLexicon(c.lexicon);
  CanonicalMap map = MaybeLoadMap(c.map);

  EvalConfig config;
  config.metrics = c.metrics.empty() ? DefaultMetrics(lexicon.has_value())
                                     : SplitList(c.metrics);
  config.max_n = c.max_n;
  config.lexicon = lexicon ? &*lexicon : nullptr;
  config.map = &map;
  config.jobs = c.jobs;
  if (!c.external_scores.empty()) {
    config.external = LoadExternalScores(c.external_scores);
  }

  Corpus pred = LoadCorpus(c.pred);
  Corpus ref = c.ref.empty() ? pred : LoadCorpus(c.ref);
  MetricReport report = EvaluateCorpus(pred, ref, config);
  Emit(c, report.ToJson().dump(2) + "\n", out);
  return kExitOk;
}

int CmdVol3dInfo(const RunConfig &c, std::ostream &out, std::ostream &) {
  RequireSet(c.vol, "--vol");
  RequireSet(c.patch, "--patch");
  if (c.crop.empty() != c.global.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "--crop and --global must be given together");
  }
  GeometryRequest req;
  req.volume = ParseExtent<vol3d::VolumeTag>(c.vol, "--vol");
  req.patch = ParseExtent<vol3d::PatchTag>(c.patch, "--patch");
  if (!c.crop.empty()) {
    req.anyres = true;
    req.crop = ParseExtent<vol3d::VolumeTag>(c.crop, "--crop");
    req.global = ParseExtent<vol3d::VolumeTag>(c.global, "--global");
  }
  req.projector = c.projector;
  req.pool = ParseExtent<vol3d::KernelTag>(c.pool, "--pool");
  req.down = ParseExtent<vol3d::KernelTag>(c.down, "--down");
  req.with_mask = c.with_mask;
  req.forward = c.forward;
  req.embed_dim = c.embed_dim;
  req.out_dim = c.out_dim;
  req.seed = c.seed;
  Emit(c, DescribeGeometry(req).dump(2) + "\n", out);
  return kExitOk;
}

// Options shared by several subcommands are attached per subcommand so the
// help text stays specific.
void AddOut(CLI::App *app, RunConfig &c) {
  app->add_option("--out", c.out, "Output path (default: standard output)");
}

void AddJobs(CLI::App *app, RunConfig &c) {
  app->add_option("--jobs", c.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
}

// Turns a JSON config object into flags. They are placed before the user's
// own flags, and every option keeps its last value, so flags override the
// file.
std::vector<std::string> ConfigToArgs(const std::string &path) {
  json doc = internal::ReadJsonFile(path);
  if (!doc.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, path + ": config must be an object");
  }
  std::vector<std::string> args;
  for (const auto &[key, value] : doc.items()) {
    std::string flag = "--" + key;
    for (char &ch : flag) {
      if (ch == '_') ch = '-';
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag + "=" + value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back(flag + "=" + value.dump());
    } else if (value.is_array()) {
      std::string joined;
      for (const json &item : value) {
        if (!joined.empty()) joined += ",";
        joined += item.is_string() ? item.get<std::string>() : item.dump();
      }
      args.push_back(flag + "=" + joined);
    } else {
      throw Error(ErrorCode::kInvalidConfig,
                  path + ": unsupported value for '" + key + "'");
    }
  }
  return args;
}

std::vector<std::string> ExpandConfig(const std::vector<std::string> &args) {
  std::vector<std::string> rest;
  std::string config_path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw Error(ErrorCode::kInvalidConfig, "--config needs a path");
      }
      config_path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty()) return rest;
  RequireFile(config_path, "config");

  // Config flags go right after the subcommand words.
  size_t insert_at = 0;
  static const std::set<std::string> kWords = {
      "extract", "canonicalize", "questions", "augment", "evaluate", "vol3d",
      "info"};
  while (insert_at < rest.size() && kWords.contains(rest[insert_at])) {
    ++insert_at;
  }
  std::vector<std::string> from_file = ConfigToArgs(config_path);
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(insert_at),
              from_file.begin(), from_file.end());
  return rest;
}

}  // namespace

OracleSelector ParseOracleSelector(const std::string &text) {
  OracleSelector s;
  if (text == "reference") {
    s.kind = OracleSelector::Kind::kReference;
  } else if (text == "const:true" || text == "const:false") {
    s.kind = OracleSelector::Kind::kConstant;
    s.value = text == "const:true";
  } else if (text.starts_with("file:") && text.size() > 5) {
    s.kind = OracleSelector::Kind::kFile;
    s.path = text.substr(5);
  } else {
    throw Error(ErrorCode::kInvalidConfig,
                "--oracle must be reference, file:<path>, const:true or "
                "const:false; got '" + text + "'");
  }
  return s;
}

template <class Tag>
vol3d::Extent3<Tag> ParseExtent(const std::string &text, const char *what) {
  std::vector<std::string> parts = SplitList(text);
  vol3d::Extent3<Tag> e;
  int64_t *slots[] = {&e.depth, &e.height, &e.width};
  bool ok = parts.size() == 3;
  for (size_t i = 0; ok && i < 3; ++i) {
    try {
      size_t used = 0;
      long long v = std::stoll(parts[i], &used);
      ok = used == parts[i].size() && v > 0;
      *slots[i] = v;
    } catch (const std::exception &) {
      ok = false;
    }
  }
  if (!ok) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(what) + " expects three positive integers D,H,W; got '" +
                    text + "'");
  }
  return e;
}

template vol3d::VolumeDims ParseExtent<vol3d::VolumeTag>(const std::string &,
                                                         const char *);
template vol3d::PatchDims ParseExtent<vol3d::PatchTag>(const std::string &,
                                                       const char *);
template vol3d::KernelDims ParseExtent<vol3d::KernelTag>(const std::string &,
                                                         const char *);

namespace {

ordered_json ExtentJson(int64_t d, int64_t h, int64_t w) {
  return ordered_json::array({d, h, w});
}

template <class Tag>
ordered_json ExtentJson(const vol3d::Extent3<Tag> &e) {
  return ExtentJson(e.depth, e.height, e.width);
}

vol3d::GridDims ProjectedGrid(const GeometryRequest &req,
                              const vol3d::GridDims &grid) {
  auto divide = [&](const vol3d::KernelDims &k) {
    vol3d::RequireDivisible(grid, k, "token grid");
    return vol3d::GridDims{grid.depth / k.depth, grid.height / k.height,
                           grid.width / k.width};
  };
  if (req.projector == "mlp") return grid;
  if (req.projector == "spp") return divide(req.pool);
  if (req.projector == "tokenpacker") return divide(req.down);
  throw Error(ErrorCode::kInvalidConfig,
              "--projector must be mlp, spp or tokenpacker; got '" +
                  req.projector + "'");
}

vol3d::TokenGrid RandomTokens(const vol3d::GridDims &grid, int64_t dim,
                              uint64_t seed) {
  vol3d::WeightStream rng(seed);
  std::vector<double> data(static_cast<size_t>(grid.Volume() * dim));
  for (double &v : data) v = rng.Uniform(-1.0, 1.0);
  return vol3d::TokenGrid(grid, dim, std::move(data));
}

vol3d::TokenGrid Project(const GeometryRequest &req,
                         const vol3d::TokenGrid &tokens, uint64_t seed) {
  if (req.projector == "spp") {
    return vol3d::SppProject(tokens, req.pool, req.out_dim, seed);
  }
  if (req.projector == "tokenpacker") {
    return vol3d::TokenPacker3dProject(tokens, req.down, req.out_dim, seed);
  }
  return vol3d::MlpProject(tokens, req.out_dim, seed);
}

}  // namespace

ordered_json DescribeGeometry(const GeometryRequest &req) {
  using namespace vol3d;
  ordered_json doc;
  doc["volume"] = ExtentJson(req.volume);
  doc["patch"] = ExtentJson(req.patch);
  doc["vit_tokens_full_volume"] = TokenCount(req.volume, req.patch);

  // Grid of the view the encoder actually sees.
  GridDims view_grid = PatchGrid(req.anyres ? req.crop : req.volume, req.patch);
  GridDims view_out = ProjectedGrid(req, view_grid);

  ordered_json projector;
  projector["type"] = req.projector;
  if (req.projector == "spp") projector["pool"] = ExtentJson(req.pool);
  if (req.projector == "tokenpacker") projector["down"] = ExtentJson(req.down);
  projector["input_grid"] = ExtentJson(view_grid);
  projector["output_grid"] = ExtentJson(view_out);
  projector["tokens_in_per_view"] = view_grid.Volume();
  projector["tokens_out_per_view"] = view_out.Volume();

  int64_t stream_tokens = view_out.Volume();
  if (req.anyres) {
    CropPlan plan = AnyresPlan(req.volume, req.crop, req.global);
    ValidateCropPlan(plan);
    GridDims global_grid = PatchGrid(req.global, req.patch);
    GridDims global_out = ProjectedGrid(req, global_grid);
    int64_t n = static_cast<int64_t>(plan.crops.size());
    stream_tokens = n * view_out.Volume() + global_out.Volume();
    if (global_out.Volume() == view_out.Volume()) {
      // Equal per-view counts: must agree with the closed-form budget.
      int64_t budget = AnyresTokenBudget(plan, req.patch, view_out.Volume());
      if (budget != stream_tokens) {
        throw Error(ErrorCode::kInvalidPlan, "token budget mismatch");
      }
    }
    ordered_json anyres;
    anyres["crop"] = ExtentJson(req.crop);
    anyres["global_view"] = ExtentJson(req.global);
    anyres["num_crops"] = n;
    anyres["num_views"] = n + 1;
    anyres["vit_tokens_per_crop"] = view_grid.Volume();
    anyres["vit_tokens_global"] = global_grid.Volume();
    anyres["vit_tokens_total"] = n * view_grid.Volume() + global_grid.Volume();
    anyres["projected_tokens_global"] = global_out.Volume();
    ordered_json boxes = ordered_json::array();
    for (const CropBox &b : plan.crops) {
      ordered_json box;
      box["offset"] = ExtentJson(b.offset.depth, b.offset.height, b.offset.width);
      box["extent"] = ExtentJson(b.extent);
      boxes.push_back(std::move(box));
    }
    anyres["crops"] = std::move(boxes);
    doc["anyres"] = std::move(anyres);
  }
  doc["projector"] = std::move(projector);
  int streams = req.with_mask ? 2 : 1;
  doc["streams"] = streams;
  doc["sequence_length"] = stream_tokens * streams;

  if (req.forward) {
    if (req.embed_dim <= 0 || req.out_dim <= 0) {
      throw Error(ErrorCode::kInvalidConfig, "--embed-dim and --out-dim must be positive");
    }
    TokenGrid image = RandomTokens(view_grid, req.embed_dim, req.seed);
    TokenGrid projected = Project(req, image, req.seed + 1);
    if (req.with_mask) {
      TokenGrid mask = RandomTokens(view_grid, req.embed_dim, req.seed + 2);
      projected = ConcatStreams(projected, Project(req, mask, req.seed + 3));
    }
    double checksum = 0.0;
    for (double v : projected.data()) checksum += v;
    ordered_json fwd;
    fwd["seed"] = req.seed;
    fwd["embed_dim"] = req.embed_dim;
    fwd["input_tokens"] = image.count();
    fwd["output_tokens"] = projected.count();
    fwd["output_dim"] = projected.dim();
    fwd["checksum"] = checksum;
    doc["forward"] = std::move(fwd);
  }
  return doc;
}

int Run(const std::vector<std::string> &raw_args, std::ostream &out,
        std::ostream &err) {
  RunConfig c;
  CLI::App app{"Radiology report triplets, augmentation, evaluation and 3D "
               "input geometry",
               "radaug"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  CLI::App *extract = app.add_subcommand("extract", "Extract triplets from a corpus");
  extract->add_option("--corpus", c.corpus, "Corpus JSONL");
  extract->add_option("--lexicon", c.lexicon, "Lexicon JSON");
  extract->add_option("--map", c.map, "Canonical map JSON");
  extract->add_option("--field", c.field, "findings or generated");
  AddOut(extract, c);

  CLI::App *canon = app.add_subcommand("canonicalize", "Apply a canonical map to triplets");
  canon->add_option("--triplets", c.triplets, "Triplets JSONL");
  canon->add_option("--map", c.map, "Canonical map JSON");
  AddOut(canon, c);

  CLI::App *questions = app.add_subcommand("questions", "Render binary questions");
  questions->add_option("--triplets", c.triplets, "Triplets JSONL");
  questions->add_option("--kb", c.kb, "Knowledge base JSON");
  AddOut(questions, c);

  CLI::App *augment = app.add_subcommand("augment", "Augment generated reports");
  augment->add_option("--corpus", c.corpus, "Corpus JSONL with generated text");
  augment->add_option("--kb", c.kb, "Knowledge base JSON");
  augment->add_option("--normality", c.normality, "Normality rules JSON");
  augment->add_option("--oracle", c.oracle,
                      "reference | file:<path> | const:true | const:false");
  augment->add_option("--lexicon", c.lexicon, "Lexicon JSON (reference oracle)");
  augment->add_option("--map", c.map, "Canonical map JSON (reference oracle)");
  augment->add_flag("--bq-only", c.bq_only, "Only binary questioning");
  augment->add_flag("--nn-only", c.nn_only, "Only naive normality");
  augment->add_option("--provenance", c.provenance,
                      "Provenance JSONL (default: <out>.provenance.jsonl)");
  AddOut(augment, c);
  AddJobs(augment, c);

  CLI::App *evaluate = app.add_subcommand("evaluate", "Score generated reports");
  evaluate->add_option("--pred", c.pred, "Corpus JSONL with generated text");
  evaluate->add_option("--ref", c.ref, "Reference corpus (default: --pred)");
  evaluate->add_option("--lexicon", c.lexicon, "Lexicon JSON (triplet metrics)");
  evaluate->add_option("--map", c.map, "Canonical map JSON");
  evaluate->add_option("--metrics", c.metrics, "Comma-separated metric names");
  evaluate->add_option("--max-n", c.max_n, "BLEU maximum n-gram order");
  evaluate->add_option("--external-scores", c.external_scores,
                       "Model-based scores JSONL to merge");
  AddOut(evaluate, c);
  AddJobs(evaluate, c);

  CLI::App *vol = app.add_subcommand("vol3d", "3D input geometry");
  vol->require_subcommand(1);
  CLI::App *info = vol->add_subcommand("info", "Print a geometry report");
  info->add_option("--vol", c.vol, "Volume D,H,W");
  info->add_option("--patch", c.patch, "Patch D,H,W");
  info->add_option("--crop", c.crop, "AnyRes crop D,H,W");
  info->add_option("--global", c.global, "AnyRes global view D,H,W");
  info->add_option("--projector", c.projector, "mlp | spp | tokenpacker");
  info->add_option("--pool", c.pool, "SPP pool kernel");
  info->add_option("--down", c.down, "TokenPacker downsampling factors");
  info->add_flag("--with-mask", c.with_mask, "Add a segmentation-mask stream");
  info->add_flag("--forward", c.forward, "Run the projector on seeded inputs");
  info->add_option("--embed-dim", c.embed_dim, "Encoder width for --forward");
  info->add_option("--out-dim", c.out_dim, "Projector width for --forward");
  info->add_option("--seed", c.seed, "Seed for --forward");
  AddOut(info, c);

  try {
    std::vector<std::string> args = ExpandConfig(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return IsValidationError(e.code()) ? kExitValidation : kExitData;
  }

  try {
    if (extract->parsed()) return CmdExtract(c, out, err);
    if (canon->parsed()) return CmdCanonicalize(c, out, err);
    if (questions->parsed()) return CmdQuestions(c, out, err);
    if (augment->parsed()) return CmdAugment(c, out, err);
    if (evaluate->parsed()) return CmdEvaluate(c, out, err);
    if (info->parsed()) return CmdVol3dInfo(c, out, err);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return IsValidationError(e.code()) ? kExitValidation : kExitData;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  err << "error: no command\n";
  return kExitValidation;
}

}  // namespace radaug::cli
